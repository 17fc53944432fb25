#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linzip/common.hpp"
#include "linzip/set_model.hpp"

namespace linzip {

/// Diagram style, which doubles as the row-sharing rule.
enum class Variant {
    Linear,         ///< g0: one set per row
    Disjoint,       ///< g1: sets share a row iff they are disjoint
    NoAlternation,  ///< g2: disjoint and active ranges do not overlap
    TwoLane,        ///< g3: disjoint and at most two active ranges overlap at any column
};

std::string_view to_string(Variant v);
/// Accepts "g0".."g3". Throws std::invalid_argument otherwise.
Variant parse_variant(std::string_view text);

/// Undirected simple graph on sets; an edge means the two sets may not share a row.
class ConflictGraph {
public:
    ConflictGraph() = default;
    explicit ConflictGraph(std::size_t n);

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_; }

    /// Adds {u, v}; no-op if present. Self-loops throw std::invalid_argument.
    void add_edge(std::size_t u, std::size_t v);
    bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
    std::size_t degree(std::size_t v) const { return neighbors_[v].size(); }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_[v]; }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;
    ConflictGraph complement() const;

private:
    std::size_t n_ = 0;
    std::size_t edges_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<std::size_t>> neighbors_;
};

/// For each set S, T_S = sets whose active range contains S's start position.
///
/// Any three sets whose ranges share a column lie inside one T_S (the one anchored at the
/// latest start), and any three members of a T_S share that column, so "no three sets of
/// one T_S in a row" is exactly the two-lane rule.
struct TSets {
    std::vector<std::vector<std::size_t>> per_set;
    /// Number of conflicting triples each set belongs to.
    std::vector<std::size_t> triple_count;

    /// Distinct T_S with at least three members, in order of first occurrence.
    std::vector<std::vector<std::size_t>> constraints() const;
};

TSets compute_t_sets(const std::vector<ActiveRange>& ranges);

/// Everything the row solvers need for one instance under one variant and column order.
struct ConflictModel {
    Variant variant = Variant::Disjoint;
    ConflictGraph graph;
    std::optional<TSets> tsets;  ///< TwoLane only
    std::vector<ActiveRange> ranges;
};

/// Disjoint: edge iff sets intersect. NoAlternation: plus edges for overlapping active ranges.
/// TwoLane: intersection edges plus T-sets. Linear: complete graph.
ConflictModel build_conflict_graph(const MembershipMatrix& mat, Variant variant, const ColumnOrder& ord);

/// Mapping set -> row. Rows are numbered 0..row_count-1 and all are nonempty.
struct RowAssignment {
    std::vector<std::size_t> row_of;
    std::size_t row_count = 0;
    RowBound bound = kUnbounded;
    SolveStatus status = SolveStatus::HeuristicOnly;

    std::vector<std::vector<std::size_t>> rows() const;
};

/// Human-readable constraint violations; empty when the assignment is valid for the model.
std::vector<std::string> assignment_violations(const ConflictModel& model, RowBound bound, const RowAssignment& a);

/// Greedy clique: repeatedly add the highest-degree vertex adjacent to everything chosen.
std::vector<std::size_t> greedy_clique(const ConflictGraph& g);

/// DSATUR with the bounded and two-lane saturation rules. Deterministic.
RowAssignment dsatur(const ConflictGraph& g, RowBound bound, const TSets* tsets = nullptr);

/// Incremental bookkeeping for the exact row solver: current color per vertex (the x
/// variables), class sizes (y), the fixed clique and the color budget.
class ExactSolveState {
public:
    ExactSolveState(const ConflictGraph& g, RowBound bound, const TSets* tsets, std::size_t budget);

    std::size_t budget() const { return budget_; }
    std::size_t vertex_count() const { return color_.size(); }
    bool colored(std::size_t v) const { return color_[v] != kNone; }
    std::size_t color_of(std::size_t v) const { return color_[v]; }
    std::size_t class_size(std::size_t c) const { return size_[c]; }

    bool x(std::size_t v, std::size_t c) const { return color_[v] == c; }
    bool y(std::size_t c) const { return size_[c] > 0; }

    /// True if giving v color c breaks no edge, bound or T-set constraint.
    bool allowed(std::size_t v, std::size_t c) const;
    void assign(std::size_t v, std::size_t c);
    void unassign(std::size_t v);

    /// Gives the clique members colors 0..|K|-1.
    void fix_clique(const std::vector<std::size_t>& clique);

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

private:
    const ConflictGraph& g_;
    RowBound bound_;
    std::size_t budget_;
    std::vector<std::size_t> color_;
    std::vector<std::size_t> size_;
    std::vector<std::uint16_t> neighbor_colors_;  // vertex x color
    std::vector<std::vector<std::size_t>> tsets_of_;  // vertex -> constraint ids
    std::vector<std::uint16_t> tset_colors_;          // constraint x color
};

/// Minimum number of rows under edge, bound and T-set constraints, by branch and bound over
/// DSATUR-ordered assignments. `upper` (normally the DSATUR result) supplies the color budget
/// and is returned with status TimeoutFallback when time runs out.
RowAssignment exact_min_rows(const ConflictGraph& g, RowBound bound, const TSets* tsets,
                             const std::vector<std::size_t>& clique, const RowAssignment& upper,
                             std::chrono::duration<double> timeout);

/// Maximum cardinality matching (Edmonds' blossom algorithm). mate[v] == v for exposed vertices.
std::vector<std::size_t> maximum_matching(const ConflictGraph& g);

/// Optimal rows for bound 2: pair the endpoints of a maximum matching of the complement graph.
RowAssignment match_pairs_b2(const ConflictGraph& g);

enum class SolveMode { Exact, Heuristic };

struct RowSolveOptions {
    RowBound bound = kUnbounded;
    SolveMode mode = SolveMode::Exact;
    std::chrono::duration<double> timeout{300.0};
    /// Use bounded DSATUR / branch and bound even for bound 2.
    bool force_coloring_for_b2 = false;
};

/// Dispatches to matching (bound 2), DSATUR or the exact solver as configured.
RowAssignment solve_rows(const ConflictModel& model, const RowSolveOptions& opts);

}  // namespace linzip
