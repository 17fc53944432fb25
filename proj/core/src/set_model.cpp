#include "linzip/set_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace linzip {

std::string_view to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal:
            return "optimal";
        case SolveStatus::HeuristicOnly:
            return "heuristic";
        case SolveStatus::TimeoutFallback:
            return "timeout_fallback";
    }
    return "unknown";
}

SetSystem SetSystem::create(std::vector<std::string> elements, const std::vector<RawSet>& sets) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!index.emplace(elements[i], i).second) {
            throw ParseError("duplicate element identifier '" + elements[i] + "'");
        }
    }

    std::unordered_set<std::string> names;
    std::vector<std::vector<std::size_t>> members(sets.size());
    std::vector<bool> used(elements.size(), false);
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& raw = sets[s];
        if (!names.insert(raw.name).second) {
            throw ParseError("duplicate set name '" + raw.name + "'");
        }
        if (raw.members.empty()) {
            throw ParseError("set '" + raw.name + "' is empty");
        }
        for (const auto& m : raw.members) {
            auto it = index.find(m);
            if (it == index.end()) {
                throw ParseError("set '" + raw.name + "' references unknown element '" + m + "'");
            }
            members[s].push_back(it->second);
            used[it->second] = true;
        }
        std::sort(members[s].begin(), members[s].end());
        if (std::adjacent_find(members[s].begin(), members[s].end()) != members[s].end()) {
            throw ParseError("set '" + raw.name + "' lists an element more than once");
        }
    }

    SetSystem sys;
    std::vector<std::size_t> remap(elements.size(), 0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (!used[i]) {
            sys.warnings_.push_back("element '" + elements[i] + "' belongs to no set and was dropped");
            continue;
        }
        remap[i] = sys.elements_.size();
        sys.elements_.push_back(std::move(elements[i]));
    }
    sys.sets_.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        NamedSet ns{sets[s].name, {}};
        ns.members.reserve(members[s].size());
        for (auto m : members[s]) ns.members.push_back(remap[m]);
        sys.sets_.push_back(std::move(ns));
    }
    return sys;
}

MembershipMatrix::MembershipMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}

std::vector<std::uint8_t> MembershipMatrix::column(std::size_t c) const {
    std::vector<std::uint8_t> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = bits_[r * cols_ + c];
    return out;
}

ColumnOrder::ColumnOrder(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    std::vector<bool> seen(perm_.size(), false);
    for (auto c : perm_) {
        if (c >= perm_.size() || seen[c]) {
            throw std::invalid_argument("column order is not a permutation");
        }
        seen[c] = true;
    }
}

ColumnOrder ColumnOrder::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    return ColumnOrder(std::move(p));
}

std::vector<std::size_t> ColumnOrder::positions() const {
    std::vector<std::size_t> pos(perm_.size());
    for (std::size_t i = 0; i < perm_.size(); ++i) pos[perm_[i]] = i;
    return pos;
}

ColumnOrder ColumnOrder::reversed() const {
    return ColumnOrder(std::vector<std::size_t>(perm_.rbegin(), perm_.rend()));
}

MembershipMatrix build_membership_matrix(const SetSystem& sys) {
    MembershipMatrix mat(sys.set_count(), sys.element_count());
    for (std::size_t s = 0; s < sys.set_count(); ++s) {
        for (auto e : sys.sets()[s].members) mat.set(s, e, true);
    }
    return mat;
}

std::vector<Block> blocks_of(const MembershipMatrix& mat, std::size_t set_index, const ColumnOrder& ord) {
    std::vector<Block> out;
    const auto row = mat.row(set_index);
    bool inside = false;
    for (std::size_t p = 0; p < ord.size(); ++p) {
        const bool on = row[ord.at(p)] != 0;
        if (on && !inside) {
            out.push_back({p, p});
        } else if (on) {
            out.back().last = p;
        }
        inside = on;
    }
    return out;
}

BlockCount count_blocks(const MembershipMatrix& mat, const ColumnOrder& ord) {
    BlockCount bc;
    bc.per_set.resize(mat.rows(), 0);
    for (std::size_t r = 0; r < mat.rows(); ++r) {
        const auto row = mat.row(r);
        std::uint8_t prev = 0;
        std::size_t n = 0;
        for (std::size_t p = 0; p < ord.size(); ++p) {
            const std::uint8_t cur = row[ord.at(p)];
            if (cur && !prev) ++n;
            prev = cur;
        }
        bc.per_set[r] = n;
        bc.total += n;
    }
    return bc;
}

ActiveRange active_range(std::size_t set_index, const MembershipMatrix& mat, const ColumnOrder& ord) {
    const auto row = mat.row(set_index);
    std::size_t first = ord.size();
    std::size_t last = 0;
    for (std::size_t p = 0; p < ord.size(); ++p) {
        if (row[ord.at(p)]) {
            first = std::min(first, p);
            last = p;
        }
    }
    if (first == ord.size()) {
        throw std::invalid_argument("active range of an empty set");
    }
    return {first + 1, last + 1};
}

std::vector<ActiveRange> active_ranges(const MembershipMatrix& mat, const ColumnOrder& ord) {
    std::vector<ActiveRange> out;
    out.reserve(mat.rows());
    for (std::size_t r = 0; r < mat.rows(); ++r) out.push_back(active_range(r, mat, ord));
    return out;
}

bool alternates(std::size_t set_i, std::size_t set_j, const MembershipMatrix& mat, const ColumnOrder& ord) {
    const auto bi = blocks_of(mat, set_i, ord);
    const auto bj = blocks_of(mat, set_j, ord);
    // Merge by start position and count owner changes; X,Y,X exists iff there are >= 3 owner runs.
    std::size_t a = 0, b = 0, runs = 0;
    int owner = -1;
    while (a < bi.size() || b < bj.size()) {
        int next;
        if (b == bj.size() || (a < bi.size() && bi[a].first < bj[b].first)) {
            next = 0;
            ++a;
        } else {
            next = 1;
            ++b;
        }
        if (next != owner) {
            ++runs;
            owner = next;
        }
    }
    return runs >= 3;
}

CollapsedMatrix collapse_duplicate_columns(const MembershipMatrix& mat) {
    std::map<std::vector<std::uint8_t>, std::size_t> seen;
    CollapsedMatrix out;
    std::vector<std::size_t> representative;
    for (std::size_t c = 0; c < mat.cols(); ++c) {
        auto col = mat.column(c);
        auto [it, fresh] = seen.emplace(std::move(col), out.groups.size());
        if (fresh) {
            out.groups.push_back({c});
            representative.push_back(c);
        } else {
            out.groups[it->second].push_back(c);
        }
    }
    out.reduced = MembershipMatrix(mat.rows(), out.groups.size());
    for (std::size_t k = 0; k < representative.size(); ++k) {
        for (std::size_t r = 0; r < mat.rows(); ++r) out.reduced.set(r, k, mat.at(r, representative[k]));
    }
    return out;
}

ColumnOrder expand_order(const ColumnOrder& reduced_order, const std::vector<std::vector<std::size_t>>& groups) {
    std::vector<std::size_t> perm;
    for (std::size_t p = 0; p < reduced_order.size(); ++p) {
        const auto& g = groups.at(reduced_order.at(p));
        perm.insert(perm.end(), g.begin(), g.end());
    }
    return ColumnOrder(std::move(perm));
}

}  // namespace linzip
