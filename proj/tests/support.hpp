#pragma once

#include <string>
#include <vector>

#include "linzip/set_model.hpp"
#include "oracles.hpp"

namespace support {

// Elements e0.., sets S0.. from a dense 0/1 matrix. Every row and column must be nonempty.
inline linzip::SetSystem system_from(const oracle::Matrix& m) {
    std::vector<std::string> elements;
    for (std::size_t c = 0; c < (m.empty() ? 0 : m[0].size()); ++c) elements.push_back("e" + std::to_string(c));
    std::vector<linzip::SetSystem::RawSet> sets;
    for (std::size_t r = 0; r < m.size(); ++r) {
        linzip::SetSystem::RawSet s{"S" + std::to_string(r), {}};
        for (std::size_t c = 0; c < m[r].size(); ++c) {
            if (m[r][c]) s.members.push_back(elements[c]);
        }
        sets.push_back(std::move(s));
    }
    return linzip::SetSystem::create(std::move(elements), sets);
}

// S1={a,c}, S2={b}, S3={d} over (a,b,c,d).
inline linzip::SetSystem toy() {
    return linzip::SetSystem::create({"a", "b", "c", "d"}, {{"S1", {"a", "c"}}, {"S2", {"b"}}, {"S3", {"d"}}});
}

inline linzip::ColumnOrder order(std::vector<std::size_t> perm) { return linzip::ColumnOrder(std::move(perm)); }

}  // namespace support
