#include "linzip/layout.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "linzip/random.hpp"

namespace linzip {

std::vector<std::size_t> order_rows(const RowAssignment& rows, std::uint64_t seed) {
    std::vector<std::size_t> perm(rows.row_count);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    for (std::size_t i = perm.size(); i > 1; --i) {
        std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    }
    return perm;
}

ColorAssignment assign_colors_circular(const DiagramLayout& layout, const std::vector<ActiveRange>& ranges,
                                       std::size_t palette_size) {
    if (palette_size == 0) throw std::invalid_argument("palette is empty");
    ColorAssignment out;
    out.color_of.assign(layout.rows.row_of.size(), 0);
    auto members = layout.rows.rows();
    std::size_t counter = 0;
    for (auto r : layout.row_order) {
        auto& row = members.at(r);
        std::sort(row.begin(), row.end(), [&](std::size_t a, std::size_t b) {
            return ranges[a].start != ranges[b].start ? ranges[a].start < ranges[b].start : a < b;
        });
        if (row.size() > palette_size) out.repeats_within_row = true;
        for (auto s : row) out.color_of[s] = counter++ % palette_size;
    }
    return out;
}

}  // namespace linzip
