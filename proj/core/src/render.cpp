#include "linzip/render.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace linzip {

namespace {

constexpr double kCharWidth = 0.6;  // average glyph width per font-size unit
constexpr double kPad = 8.0;

std::string num(double v) {
    std::array<char, 64> buf{};
    if (std::abs(v) < 0.005) v = 0.0;
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    std::string s(buf.data(), end);
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

std::string escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

std::size_t code_points(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char ch : s) n += (ch & 0xC0) != 0x80;
    return n;
}

// First `count` code points of s.
std::string utf8_prefix(std::string_view s, std::size_t count) {
    std::size_t seen = 0, i = 0;
    for (; i < s.size(); ++i) {
        if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
            if (seen == count) break;
            ++seen;
        }
    }
    return std::string(s.substr(0, i));
}

struct Frame {
    double left = 0, top = 0, col = 0, row_pitch = 0;
    double x(std::size_t boundary) const { return left + static_cast<double>(boundary) * col; }
    double y(std::size_t row_position) const { return top + static_cast<double>(row_position) * row_pitch; }
};

void check_layout(const DiagramLayout& layout, const SetSystem& sys, const MembershipMatrix& mat,
                  const std::vector<ActiveRange>& ranges) {
    const std::size_t n = sys.set_count();
    if (layout.rows.row_of.size() != n || layout.color_of.size() != n) {
        throw RenderError("layout does not cover every set of the system");
    }
    if (layout.column_order.size() != sys.element_count()) {
        throw RenderError("column order does not match the element count");
    }
    std::vector<bool> seen(layout.rows.row_count, false);
    if (layout.row_order.size() != layout.rows.row_count) throw RenderError("row order has the wrong length");
    for (auto r : layout.row_order) {
        if (r >= seen.size() || seen[r]) throw RenderError("row order is not a permutation");
        seen[r] = true;
    }
    const auto rows = layout.rows.rows();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.empty()) throw RenderError("row " + std::to_string(r) + " is empty");
        if (layout.style == Variant::Linear && row.size() > 1) {
            throw RenderError("linear style requires one set per row, row " + std::to_string(r) + " holds " +
                              std::to_string(row.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            for (std::size_t j = i + 1; j < row.size(); ++j) {
                const auto a = mat.row(row[i]);
                const auto b = mat.row(row[j]);
                for (std::size_t c = 0; c < mat.cols(); ++c) {
                    if (a[c] && b[c]) {
                        throw RenderError("sets '" + sys.sets()[row[i]].name + "' and '" + sys.sets()[row[j]].name +
                                          "' intersect but share a row");
                    }
                }
                if (layout.style == Variant::NoAlternation && ranges[row[i]].overlaps(ranges[row[j]])) {
                    throw RenderError("g2 row " + std::to_string(r) + " holds overlapping active ranges");
                }
            }
        }
        if (layout.style == Variant::TwoLane) {
            for (std::size_t p = 1; p <= mat.cols(); ++p) {
                std::size_t k = 0;
                for (auto s : row) k += ranges[s].contains(p) ? 1 : 0;
                if (k > 2) throw RenderError("g3 row " + std::to_string(r) + " has three active ranges at one column");
            }
        }
    }
}

}  // namespace

std::string_view to_string(LinkLane lane) {
    switch (lane) {
        case LinkLane::Center:
            return "center";
        case LinkLane::Top:
            return "top";
        case LinkLane::Bottom:
            return "bottom";
    }
    return "?";
}

void RenderGeometry::validate() const {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
    };
    positive(column_width, "column_width");
    positive(row_height, "row_height");
    positive(block_margin, "block_margin");
    positive(row_margin, "row_margin");
    positive(link_thickness, "link_thickness");
    positive(label_font_size, "label_font_size");
    if (canvas_width) positive(*canvas_width, "canvas_width");
    if (link_thickness >= row_height) throw std::invalid_argument("link_thickness must be below row_height");
    if (!canvas_width && block_margin >= column_width) {
        throw std::invalid_argument("block_margin must be below column_width");
    }
}

SvgDocument render(const DiagramLayout& layout, const SetSystem& sys, const RenderOptions& options) {
    const auto& geo = options.geometry;
    geo.validate();
    if (options.palette.empty()) throw std::invalid_argument("palette is empty");

    const MembershipMatrix mat = build_membership_matrix(sys);
    const ColumnOrder& ord = layout.column_order;
    if (ord.size() != sys.element_count()) throw RenderError("column order does not match the element count");
    const auto ranges = active_ranges(mat, ord);
    check_layout(layout, sys, mat, ranges);

    const double font = geo.label_font_size;
    const std::size_t cols = ord.size();
    const std::size_t nrows = layout.row_order.size();

    // Header height: rotated element names, or one line of cardinalities.
    double header = font + kPad;
    if (!options.intersection_labels) {
        std::size_t longest = 1;
        for (const auto& e : sys.elements()) longest = std::max(longest, code_points(e));
        header = static_cast<double>(longest) * kCharWidth * font + kPad;
    }
    double left = kPad;
    if (layout.style == Variant::Linear) {
        std::size_t longest = 1;
        for (const auto& s : sys.sets()) longest = std::max(longest, code_points(s.name));
        left = static_cast<double>(longest) * kCharWidth * font + 2 * kPad;
    }

    Frame f;
    f.left = left;
    f.top = header + kPad;
    f.col = geo.column_width;
    if (geo.canvas_width && cols > 0) f.col = std::max(1e-3, (*geo.canvas_width - left - kPad) / static_cast<double>(cols));
    if (geo.block_margin >= f.col) throw std::invalid_argument("block_margin must be below the scaled column width");
    f.row_pitch = geo.row_height + geo.row_margin;

    SvgDocument doc;
    auto& meta = doc.meta;
    meta.style = layout.style;
    meta.width = f.x(cols) + kPad;
    meta.height = f.y(nrows) - geo.row_margin + kPad;

    std::vector<std::size_t> position_of_row(layout.rows.row_count);
    for (std::size_t k = 0; k < nrows; ++k) position_of_row[layout.row_order[k]] = k;

    // Blocks.
    std::vector<std::vector<std::size_t>> rects_of_set(sys.set_count());
    for (std::size_t s = 0; s < sys.set_count(); ++s) {
        const std::size_t rp = position_of_row[layout.rows.row_of[s]];
        for (const auto& b : blocks_of(mat, s, ord)) {
            RectMeta r;
            r.set = s;
            r.row_position = rp;
            r.first = b.first;
            r.last = b.last;
            r.x = f.x(b.first) + geo.block_margin / 2;
            r.width = f.x(b.last + 1) - f.x(b.first) - geo.block_margin;
            r.y = f.y(rp);
            r.height = geo.row_height;
            r.fill = options.palette[layout.color_of[s] % options.palette.size()];
            rects_of_set[s].push_back(meta.rects.size());
            meta.rects.push_back(std::move(r));
        }
    }

    // Guide lines at every block boundary.
    std::set<std::size_t> boundaries;
    for (const auto& r : meta.rects) {
        boundaries.insert(r.first);
        boundaries.insert(r.last + 1);
    }
    for (auto b : boundaries) meta.guides.push_back({b, f.x(b), f.top - kPad / 2, meta.height - kPad / 2});

    // Block links.
    if (layout.style == Variant::NoAlternation || layout.style == Variant::TwoLane) {
        const auto members = layout.rows.rows();
        for (std::size_t r = 0; r < members.size(); ++r) {
            std::vector<std::size_t> linked;
            for (auto s : members[r]) {
                if (rects_of_set[s].size() > 1) linked.push_back(s);
            }
            std::sort(linked.begin(), linked.end(), [&](std::size_t a, std::size_t b) {
                return ranges[a].start != ranges[b].start ? ranges[a].start < ranges[b].start : a < b;
            });
            std::array<std::size_t, 2> lane_end{0, 0};  // last occupied 1-based column per lane
            for (auto s : linked) {
                const auto& first = meta.rects[rects_of_set[s].front()];
                const auto& last = meta.rects[rects_of_set[s].back()];
                LinkMeta l;
                l.set = s;
                l.row_position = first.row_position;
                l.x1 = first.x;
                l.x2 = last.x + last.width;
                const double ry = first.y;
                if (layout.style == Variant::NoAlternation) {
                    l.lane = LinkLane::Center;
                    l.y = ry + geo.row_height / 2;
                } else {
                    std::size_t lane = ranges[s].start > lane_end[0] ? 0 : 1;
                    if (lane == 1 && ranges[s].start <= lane_end[1]) {
                        throw RenderError("g3 row needs a third link lane");
                    }
                    lane_end[lane] = ranges[s].end;
                    l.lane = lane == 0 ? LinkLane::Top : LinkLane::Bottom;
                    l.y = lane == 0 ? ry + geo.link_thickness / 2 : ry + geo.row_height - geo.link_thickness / 2;
                }
                meta.links.push_back(l);
            }
        }
        std::stable_sort(meta.links.begin(), meta.links.end(),
                         [](const LinkMeta& a, const LinkMeta& b) { return a.set < b.set; });
    }

    // Set labels.
    for (std::size_t s = 0; s < sys.set_count(); ++s) {
        const auto& name = sys.sets()[s].name;
        LabelMeta lab;
        lab.kind = LabelKind::Set;
        lab.owner = s;
        lab.full_text = name;
        const std::size_t rp = position_of_row[layout.rows.row_of[s]];
        if (layout.style == Variant::Linear) {
            lab.text = name;
            lab.x = f.left - kPad;
            lab.y = f.y(rp) + geo.row_height / 2 + font * 0.35;
        } else {
            // Leftmost among the widest blocks.
            const RectMeta* host = nullptr;
            for (auto idx : rects_of_set[s]) {
                const auto& r = meta.rects[idx];
                if (!host || r.last - r.first > host->last - host->first) host = &r;
            }
            const double room = host->width - 4.0;
            const auto max_chars = static_cast<std::size_t>(std::max(0.0, std::floor(room / (kCharWidth * font))));
            if (code_points(name) > max_chars) {
                lab.truncated = true;
                lab.text = utf8_prefix(name, max_chars > 0 ? max_chars - 1 : 0) + "…";
            } else {
                lab.text = name;
            }
            lab.x = host->x + host->width / 2;
            lab.y = host->y + geo.row_height / 2 + font * 0.35;
        }
        lab.background_width = static_cast<double>(code_points(lab.text)) * kCharWidth * font + 4.0;
        meta.labels.push_back(std::move(lab));
    }

    // Column header.
    if (options.intersection_labels) {
        std::size_t p = 0;
        while (p < cols) {
            std::size_t q = p + 1;
            const auto col_p = mat.column(ord.at(p));
            while (q < cols && mat.column(ord.at(q)) == col_p) ++q;
            LabelMeta lab;
            lab.kind = LabelKind::Cardinality;
            lab.owner = p;
            lab.text = lab.full_text = std::to_string(q - p);
            lab.x = (f.x(p) + f.x(q)) / 2;
            lab.y = header;
            lab.background_width = static_cast<double>(lab.text.size()) * kCharWidth * font + 4.0;
            meta.labels.push_back(std::move(lab));
            p = q;
        }
    } else {
        for (std::size_t p = 0; p < cols; ++p) {
            LabelMeta lab;
            lab.kind = LabelKind::Element;
            lab.owner = p;
            lab.text = lab.full_text = sys.elements()[ord.at(p)];
            lab.x = f.x(p) + f.col / 2 + font * 0.35;
            lab.y = header;
            lab.background_width = static_cast<double>(code_points(lab.text)) * kCharWidth * font + 4.0;
            meta.labels.push_back(std::move(lab));
        }
    }

    // Serialize.
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(meta.width) << "\" height=\""
        << num(meta.height) << "\" viewBox=\"0 0 " << num(meta.width) << ' ' << num(meta.height) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << num(meta.width) << "\" height=\"" << num(meta.height)
        << "\" fill=\"#ffffff\"/>\n";

    out << "<g class=\"guides\" stroke=\"#c8c8c8\" stroke-width=\"0.5\">\n";
    for (const auto& g : meta.guides) {
        out << "<line x1=\"" << num(g.x) << "\" y1=\"" << num(g.y1) << "\" x2=\"" << num(g.x) << "\" y2=\""
            << num(g.y2) << "\"/>\n";
    }
    out << "</g>\n";

    out << "<g class=\"blocks\">\n";
    for (const auto& r : meta.rects) {
        out << "<rect x=\"" << num(r.x) << "\" y=\"" << num(r.y) << "\" width=\"" << num(r.width) << "\" height=\""
            << num(r.height) << "\" fill=\"" << escape(r.fill) << "\"><title>" << escape(sys.sets()[r.set].name)
            << "</title></rect>\n";
    }
    out << "</g>\n";

    if (!meta.links.empty()) {
        out << "<g class=\"links\" stroke-linecap=\"butt\">\n";
        for (const auto& l : meta.links) {
            out << "<line x1=\"" << num(l.x1) << "\" y1=\"" << num(l.y) << "\" x2=\"" << num(l.x2) << "\" y2=\""
                << num(l.y) << "\" stroke=\"" << escape(options.palette[layout.color_of[l.set] % options.palette.size()])
                << "\" stroke-width=\"" << num(geo.link_thickness) << "\"/>\n";
        }
        out << "</g>\n";
    }

    out << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"" << num(font) << "\" fill=\"#222222\">\n";
    for (const auto& lab : meta.labels) {
        const double bh = font + 2.0;
        out << "<g>";
        if (lab.kind == LabelKind::Element) {
            out << "<g transform=\"rotate(-90 " << num(lab.x) << ' ' << num(lab.y) << ")\">";
            out << "<rect x=\"" << num(lab.x - 2) << "\" y=\"" << num(lab.y - font * 0.85) << "\" width=\""
                << num(lab.background_width) << "\" height=\"" << num(bh) << "\" fill=\"#ffffff\"/>";
            out << "<text x=\"" << num(lab.x) << "\" y=\"" << num(lab.y) << "\">" << escape(lab.text) << "</text>";
            out << "</g>";
        } else {
            const bool right_aligned = lab.kind == LabelKind::Set && layout.style == Variant::Linear;
            const double bx = right_aligned ? lab.x - lab.background_width + 2 : lab.x - lab.background_width / 2;
            out << "<rect x=\"" << num(bx) << "\" y=\"" << num(lab.y - font * 0.85) << "\" width=\""
                << num(lab.background_width) << "\" height=\"" << num(bh) << "\" fill=\"#ffffff\"/>";
            out << "<text x=\"" << num(lab.x) << "\" y=\"" << num(lab.y) << "\" text-anchor=\""
                << (right_aligned ? "end" : "middle") << "\">";
            if (lab.truncated) out << "<title>" << escape(lab.full_text) << "</title>";
            out << escape(lab.text) << "</text>";
        }
        out << "</g>\n";
    }
    out << "</g>\n</svg>\n";
    doc.svg = out.str();
    return doc;
}

std::string metadata_to_json(const RenderMetadata& meta) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["style"] = std::string(to_string(meta.style));
    j["width"] = meta.width;
    j["height"] = meta.height;
    auto& rects = j["rects"] = ordered_json::array();
    for (const auto& r : meta.rects) {
        rects.push_back({{"set", r.set},
                         {"row", r.row_position},
                         {"first", r.first},
                         {"last", r.last},
                         {"x", r.x},
                         {"y", r.y},
                         {"width", r.width},
                         {"height", r.height},
                         {"fill", r.fill}});
    }
    auto& links = j["links"] = ordered_json::array();
    for (const auto& l : meta.links) {
        links.push_back({{"set", l.set},
                         {"row", l.row_position},
                         {"x1", l.x1},
                         {"x2", l.x2},
                         {"y", l.y},
                         {"lane", std::string(to_string(l.lane))}});
    }
    auto& guides = j["guides"] = ordered_json::array();
    for (const auto& g : meta.guides) guides.push_back({{"boundary", g.boundary}, {"x", g.x}});
    auto& labels = j["labels"] = ordered_json::array();
    for (const auto& l : meta.labels) {
        const char* kind = l.kind == LabelKind::Set ? "set" : (l.kind == LabelKind::Element ? "element" : "cardinality");
        labels.push_back({{"kind", kind},
                          {"owner", l.owner},
                          {"text", l.text},
                          {"full_text", l.full_text},
                          {"x", l.x},
                          {"y", l.y},
                          {"truncated", l.truncated}});
    }
    return j.dump(2) + "\n";
}

}  // namespace linzip
