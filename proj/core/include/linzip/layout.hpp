#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linzip/compress.hpp"
#include "linzip/set_model.hpp"

namespace linzip {

/// Tableau10, in its usual order.
inline const std::vector<std::string>& default_palette() {
    static const std::vector<std::string> p = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                               "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
    return p;
}

/// Everything the renderer needs besides the set system itself.
struct DiagramLayout {
    Variant style = Variant::Linear;
    ColumnOrder column_order;
    RowAssignment rows;
    /// row_order[k] is the row drawn k-th from the top.
    std::vector<std::size_t> row_order;
    /// Palette index per set.
    std::vector<std::size_t> color_of;
};

/// Uniformly random permutation of the rows (Fisher-Yates), fixed by the seed.
std::vector<std::size_t> order_rows(const RowAssignment& rows, std::uint64_t seed);

struct ColorAssignment {
    std::vector<std::size_t> color_of;
    /// Some row holds more sets than the palette has colors.
    bool repeats_within_row = false;
};

/// Walks rows in drawing order and, inside a row, sets by block start, handing out palette
/// indices from one running counter modulo `palette_size`. The counter never resets, so any
/// row with at most `palette_size` sets gets pairwise distinct colors.
ColorAssignment assign_colors_circular(const DiagramLayout& layout, const std::vector<ActiveRange>& ranges,
                                       std::size_t palette_size);

}  // namespace linzip
