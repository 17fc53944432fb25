#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linzip/layout.hpp"
#include "linzip/set_model.hpp"

namespace linzip {

/// Pixel dimensions. All values must be positive, link_thickness < row_height and
/// block_margin < column_width.
struct RenderGeometry {
    double column_width = 18.0;
    double row_height = 28.0;
    double block_margin = 4.0;
    double row_margin = 8.0;
    double link_thickness = 2.0;
    double label_font_size = 12.0;
    /// When set, column_width is derived so the whole drawing is this wide.
    std::optional<double> canvas_width;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

struct RenderOptions {
    RenderGeometry geometry;
    std::vector<std::string> palette = default_palette();
    /// Show the size of each run of equal columns above the matrix instead of element names.
    bool intersection_labels = false;
};

enum class LinkLane { Center, Top, Bottom };

struct RectMeta {
    std::size_t set = 0;
    std::size_t row_position = 0;  ///< drawing row, top = 0
    std::size_t first = 0;         ///< 0-based column positions covered
    std::size_t last = 0;
    double x = 0, y = 0, width = 0, height = 0;
    std::string fill;
};

struct LinkMeta {
    std::size_t set = 0;
    std::size_t row_position = 0;
    double x1 = 0, x2 = 0, y = 0;
    LinkLane lane = LinkLane::Center;
};

struct GuideMeta {
    std::size_t boundary = 0;  ///< column boundary index, 0..cols
    double x = 0, y1 = 0, y2 = 0;
};

enum class LabelKind { Set, Element, Cardinality };

struct LabelMeta {
    LabelKind kind = LabelKind::Set;
    std::size_t owner = 0;  ///< set index, column position, or run start
    std::string text;       ///< as drawn
    std::string full_text;
    double x = 0, y = 0;
    double background_width = 0;
    bool truncated = false;
};

struct RenderMetadata {
    Variant style = Variant::Linear;
    double width = 0, height = 0;
    std::vector<RectMeta> rects;
    std::vector<LinkMeta> links;
    std::vector<GuideMeta> guides;
    std::vector<LabelMeta> labels;
};

struct SvgDocument {
    std::string svg;
    RenderMetadata meta;
};

/// Draws the layout as SVG 1.1. Throws RenderError if the layout cannot be drawn in its
/// style: a linear layout with shared rows, intersecting sets in one row, overlapping
/// ranges in a g2 row, or three overlapping ranges in a g3 row.
SvgDocument render(const DiagramLayout& layout, const SetSystem& sys, const RenderOptions& options = {});

/// Metadata sidecar as a JSON document.
std::string metadata_to_json(const RenderMetadata& meta);

std::string_view to_string(LinkLane lane);

}  // namespace linzip
