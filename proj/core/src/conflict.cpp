#include <algorithm>
#include <map>
#include <stdexcept>

#include "linzip/compress.hpp"

namespace linzip {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::Linear:
            return "g0";
        case Variant::Disjoint:
            return "g1";
        case Variant::NoAlternation:
            return "g2";
        case Variant::TwoLane:
            return "g3";
    }
    return "?";
}

Variant parse_variant(std::string_view text) {
    if (text == "g0") return Variant::Linear;
    if (text == "g1") return Variant::Disjoint;
    if (text == "g2") return Variant::NoAlternation;
    if (text == "g3") return Variant::TwoLane;
    throw std::invalid_argument("unknown variant '" + std::string(text) + "' (expected g0, g1, g2 or g3)");
}

ConflictGraph::ConflictGraph(std::size_t n) : n_(n), adj_(n * n, 0), neighbors_(n) {}

void ConflictGraph::add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw std::invalid_argument("conflict graph: self-loop");
    if (adj_[u * n_ + v]) return;
    adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
    neighbors_[u].insert(std::lower_bound(neighbors_[u].begin(), neighbors_[u].end(), v), v);
    neighbors_[v].insert(std::lower_bound(neighbors_[v].begin(), neighbors_[v].end(), u), u);
    ++edges_;
}

std::vector<std::pair<std::size_t, std::size_t>> ConflictGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges_);
    for (std::size_t u = 0; u < n_; ++u) {
        for (auto v : neighbors_[u]) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

ConflictGraph ConflictGraph::complement() const {
    ConflictGraph c(n_);
    for (std::size_t u = 0; u < n_; ++u) {
        for (std::size_t v = u + 1; v < n_; ++v) {
            if (!adjacent(u, v)) c.add_edge(u, v);
        }
    }
    return c;
}

std::vector<std::vector<std::size_t>> TSets::constraints() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& t : per_set) {
        if (t.size() >= 3 && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    return out;
}

TSets compute_t_sets(const std::vector<ActiveRange>& ranges) {
    const std::size_t n = ranges.size();
    TSets ts;
    ts.per_set.resize(n);
    ts.triple_count.assign(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t earlier = 0;  // members ordered before s by (start, index)
        for (std::size_t o = 0; o < n; ++o) {
            if (!ranges[o].contains(ranges[s].start)) continue;
            ts.per_set[s].push_back(o);
            if (o != s && (ranges[o].start < ranges[s].start || (ranges[o].start == ranges[s].start && o < s))) {
                ++earlier;
            }
        }
        // Each conflicting triple is counted once, at its member with the largest (start, index).
        if (earlier >= 2) {
            ts.triple_count[s] += earlier * (earlier - 1) / 2;
            for (auto o : ts.per_set[s]) {
                if (o != s && (ranges[o].start < ranges[s].start || (ranges[o].start == ranges[s].start && o < s))) {
                    ts.triple_count[o] += earlier - 1;
                }
            }
        }
    }
    return ts;
}

ConflictModel build_conflict_graph(const MembershipMatrix& mat, Variant variant, const ColumnOrder& ord) {
    const std::size_t n = mat.rows();
    ConflictModel m;
    m.variant = variant;
    m.graph = ConflictGraph(n);
    if (ord.size() == mat.cols()) {
        m.ranges = active_ranges(mat, ord);
    } else if (variant == Variant::NoAlternation || variant == Variant::TwoLane) {
        throw std::invalid_argument("column order does not match the matrix");
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = mat.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            bool conflict = variant == Variant::Linear;
            if (!conflict) {
                const auto rj = mat.row(j);
                for (std::size_t c = 0; c < mat.cols() && !conflict; ++c) conflict = ri[c] && rj[c];
            }
            if (!conflict && variant == Variant::NoAlternation) conflict = m.ranges[i].overlaps(m.ranges[j]);
            if (conflict) m.graph.add_edge(i, j);
        }
    }
    if (variant == Variant::TwoLane) m.tsets = compute_t_sets(m.ranges);
    return m;
}

std::vector<std::vector<std::size_t>> RowAssignment::rows() const {
    std::vector<std::vector<std::size_t>> out(row_count);
    for (std::size_t s = 0; s < row_of.size(); ++s) out.at(row_of[s]).push_back(s);
    return out;
}

std::vector<std::string> assignment_violations(const ConflictModel& model, RowBound bound, const RowAssignment& a) {
    std::vector<std::string> out;
    const auto& g = model.graph;
    if (a.row_of.size() != g.vertex_count()) {
        out.push_back("assignment covers " + std::to_string(a.row_of.size()) + " sets, expected " +
                      std::to_string(g.vertex_count()));
        return out;
    }
    std::vector<std::size_t> sizes(a.row_count, 0);
    for (std::size_t s = 0; s < a.row_of.size(); ++s) {
        if (a.row_of[s] >= a.row_count) {
            out.push_back("set " + std::to_string(s) + " has row " + std::to_string(a.row_of[s]) + " out of range");
            return out;
        }
        ++sizes[a.row_of[s]];
    }
    for (std::size_t r = 0; r < a.row_count; ++r) {
        if (sizes[r] == 0) out.push_back("row " + std::to_string(r) + " is empty");
        if (bound && sizes[r] > *bound) out.push_back("row " + std::to_string(r) + " exceeds the bound");
    }
    for (auto [u, v] : g.edges()) {
        if (a.row_of[u] == a.row_of[v]) {
            out.push_back("conflicting sets " + std::to_string(u) + " and " + std::to_string(v) + " share a row");
        }
    }
    if (model.tsets) {
        for (const auto& t : model.tsets->constraints()) {
            std::map<std::size_t, std::size_t> per_row;
            for (auto s : t) {
                if (++per_row[a.row_of[s]] == 3) {
                    out.push_back("three overlapping active ranges share row " + std::to_string(a.row_of[s]));
                }
            }
        }
    }
    return out;
}

std::vector<std::size_t> greedy_clique(const ConflictGraph& g) {
    std::vector<std::size_t> clique;
    std::vector<std::size_t> cand(g.vertex_count());
    for (std::size_t v = 0; v < cand.size(); ++v) cand[v] = v;
    while (!cand.empty()) {
        std::size_t pick = cand.front();
        for (auto v : cand) {
            if (g.degree(v) > g.degree(pick)) pick = v;
        }
        clique.push_back(pick);
        std::vector<std::size_t> next;
        for (auto v : cand) {
            if (v != pick && g.adjacent(pick, v)) next.push_back(v);
        }
        cand = std::move(next);
    }
    std::sort(clique.begin(), clique.end());
    return clique;
}

}  // namespace linzip
