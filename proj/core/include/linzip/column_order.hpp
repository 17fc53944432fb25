#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "linzip/common.hpp"
#include "linzip/set_model.hpp"

namespace linzip {

/// Fill value of the auxiliary column that closes the tour.
///
/// With an all-zeros column, tour cost is exactly twice the total block count, so a
/// minimum tour is a block-minimal column order. The all-ones column is kept for
/// comparison; its optimal tours minimize gaps rather than blocks.
enum class AuxiliaryColumn { Zeros, Ones };

/// Symmetric TSP over the distinct columns of a membership matrix plus one auxiliary node.
struct TspInstance {
    /// The duplicate-collapsed matrix; node k < aux_index is reduced column k.
    CollapsedMatrix collapsed;
    AuxiliaryColumn aux_kind = AuxiliaryColumn::Zeros;
    std::size_t aux_index = 0;
    /// Row-major node_count x node_count Hamming distances.
    std::vector<int> dist;

    std::size_t node_count() const { return aux_index + 1; }
    int distance(std::size_t i, std::size_t j) const { return dist[i * node_count() + j]; }
    std::size_t original_columns() const;
};

struct TourResult {
    ColumnOrder order;              ///< over the original (uncollapsed) columns
    std::vector<std::size_t> tour;  ///< node sequence, auxiliary node last
    std::int64_t tour_cost = 0;
    SolveStatus status = SolveStatus::HeuristicOnly;
};

TspInstance build_tsp_instance(const MembershipMatrix& mat, AuxiliaryColumn aux = AuxiliaryColumn::Zeros);

std::int64_t tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour);

/// Rotates the cycle so the auxiliary node is last, drops it and expands merged columns.
ColumnOrder tour_to_column_order(const std::vector<std::size_t>& tour, std::size_t aux_index,
                                 const std::vector<std::vector<std::size_t>>& groups);

/// Nearest neighbour from the auxiliary node, 2-opt/or-opt descent, then a fixed-schedule
/// simulated annealing pass and a final descent. Deterministic for a given seed.
TourResult solve_tour_heuristic(const TspInstance& inst, std::uint64_t seed);

/// Minimum tour. Held-Karp for small components, 1-tree branch and bound otherwise.
/// When the budget runs out (or is zero) the heuristic tour for `fallback_seed` is returned
/// with status TimeoutFallback.
TourResult solve_tour_exact(const TspInstance& inst, std::chrono::duration<double> timeout,
                            std::uint64_t fallback_seed);

}  // namespace linzip
