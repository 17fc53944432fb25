#include <algorithm>
#include <limits>

#include "linzip/compress.hpp"

namespace linzip {

namespace {

// Constraint T-sets indexed per vertex.
struct TSetIndex {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::vector<std::size_t>> of_vertex;

    TSetIndex(std::size_t n, const TSets* tsets) : of_vertex(n) {
        if (!tsets) return;
        sets = tsets->constraints();
        for (std::size_t t = 0; t < sets.size(); ++t) {
            for (auto v : sets[t]) of_vertex[v].push_back(t);
        }
    }
};

RowAssignment from_colors(const std::vector<std::size_t>& color, RowBound bound, SolveStatus status) {
    // Renumber rows by first appearance so equal colorings print identically.
    RowAssignment a;
    a.bound = bound;
    a.status = status;
    a.row_of.resize(color.size());
    std::vector<std::size_t> remap;
    for (std::size_t v = 0; v < color.size(); ++v) {
        if (color[v] >= remap.size()) remap.resize(color[v] + 1, ExactSolveState::kNone);
        if (remap[color[v]] == ExactSolveState::kNone) remap[color[v]] = a.row_count++;
        a.row_of[v] = remap[color[v]];
    }
    return a;
}

}  // namespace

RowAssignment dsatur(const ConflictGraph& g, RowBound bound, const TSets* tsets) {
    const std::size_t n = g.vertex_count();
    const TSetIndex tindex(n, tsets);
    constexpr std::size_t kNone = ExactSolveState::kNone;

    std::vector<std::size_t> color(n, kNone);
    std::vector<std::size_t> class_size;
    std::vector<std::size_t> tie(n);
    for (std::size_t v = 0; v < n; ++v) tie[v] = g.degree(v) + (tsets ? tsets->triple_count[v] : 0);

    std::vector<std::uint8_t> blocked;
    auto compute_blocked = [&](std::size_t v) {
        blocked.assign(class_size.size(), 0);
        for (auto u : g.neighbors(v)) {
            if (color[u] != kNone) blocked[color[u]] = 1;
        }
        if (bound) {
            for (std::size_t c = 0; c < class_size.size(); ++c) {
                if (class_size[c] >= *bound) blocked[c] = 1;
            }
        }
        std::vector<std::size_t> count;
        for (auto t : tindex.of_vertex[v]) {
            count.assign(class_size.size(), 0);
            for (auto u : tindex.sets[t]) {
                if (u != v && color[u] != kNone && ++count[color[u]] >= 2) blocked[color[u]] = 1;
            }
        }
        std::size_t sat = 0;
        for (auto b : blocked) sat += b;
        return sat;
    };

    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = kNone, pick_sat = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] != kNone) continue;
            const std::size_t sat = compute_blocked(v);
            if (pick == kNone || sat > pick_sat || (sat == pick_sat && tie[v] > tie[pick])) {
                pick = v;
                pick_sat = sat;
            }
        }
        compute_blocked(pick);
        std::size_t c = 0;
        while (c < blocked.size() && blocked[c]) ++c;
        if (c == class_size.size()) class_size.push_back(0);
        color[pick] = c;
        ++class_size[c];
    }
    return from_colors(color, bound, SolveStatus::HeuristicOnly);
}

ExactSolveState::ExactSolveState(const ConflictGraph& g, RowBound bound, const TSets* tsets, std::size_t budget)
    : g_(g),
      bound_(bound),
      budget_(budget),
      color_(g.vertex_count(), kNone),
      size_(budget, 0),
      neighbor_colors_(g.vertex_count() * budget, 0),
      tsets_of_(g.vertex_count()) {
    if (tsets) {
        const auto cons = tsets->constraints();
        for (std::size_t t = 0; t < cons.size(); ++t) {
            for (auto v : cons[t]) tsets_of_[v].push_back(t);
        }
        tset_colors_.assign(cons.size() * budget, 0);
    }
}

bool ExactSolveState::allowed(std::size_t v, std::size_t c) const {
    if (c >= budget_) return false;
    if (neighbor_colors_[v * budget_ + c] != 0) return false;
    if (bound_ && size_[c] >= *bound_) return false;
    for (auto t : tsets_of_[v]) {
        if (tset_colors_[t * budget_ + c] >= 2) return false;
    }
    return true;
}

void ExactSolveState::assign(std::size_t v, std::size_t c) {
    color_[v] = c;
    ++size_[c];
    for (auto u : g_.neighbors(v)) ++neighbor_colors_[u * budget_ + c];
    for (auto t : tsets_of_[v]) ++tset_colors_[t * budget_ + c];
}

void ExactSolveState::unassign(std::size_t v) {
    const std::size_t c = color_[v];
    color_[v] = kNone;
    --size_[c];
    for (auto u : g_.neighbors(v)) --neighbor_colors_[u * budget_ + c];
    for (auto t : tsets_of_[v]) --tset_colors_[t * budget_ + c];
}

void ExactSolveState::fix_clique(const std::vector<std::size_t>& clique) {
    for (std::size_t i = 0; i < clique.size(); ++i) assign(clique[i], i);
}

namespace {

class RowBranchAndBound {
public:
    RowBranchAndBound(const ConflictGraph& g, RowBound bound, const TSets* tsets, std::size_t budget,
                      const Deadline& deadline)
        : g_(g), bound_(bound), state_(g, bound, tsets, budget), deadline_(deadline) {}

    // Returns false when aborted by the deadline.
    bool run(const std::vector<std::size_t>& clique, std::size_t upper, std::size_t lower) {
        best_count_ = upper;
        lower_ = lower;
        if (upper <= lower) return true;
        state_.fix_clique(clique);
        colored_ = clique.size();
        search(clique.size());
        return !aborted_;
    }

    bool improved() const { return !best_.empty(); }
    const std::vector<std::size_t>& best() const { return best_; }

private:
    void search(std::size_t used) {
        if (aborted_ || done_) return;
        if ((++nodes_ & 0x3ff) == 0 && deadline_.expired()) {
            aborted_ = true;
            return;
        }
        const std::size_t n = g_.vertex_count();
        if (colored_ == n) {
            best_count_ = used;
            best_.resize(n);
            for (std::size_t v = 0; v < n; ++v) best_[v] = state_.color_of(v);
            if (best_count_ <= lower_) done_ = true;
            return;
        }
        if (bound_) {
            std::size_t free = 0;
            for (std::size_t c = 0; c < used; ++c) free += *bound_ - state_.class_size(c);
            const std::size_t left = n - colored_;
            const std::size_t extra = left > free ? (left - free + *bound_ - 1) / *bound_ : 0;
            if (used + extra >= best_count_) return;
        }

        // Most constrained vertex first; ties by degree, then index.
        std::size_t pick = ExactSolveState::kNone, pick_options = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (state_.colored(v)) continue;
            std::size_t options = 0;
            for (std::size_t c = 0; c < used; ++c) options += state_.allowed(v, c) ? 1 : 0;
            if (options == 0 && used + 1 >= best_count_) return;
            if (pick == ExactSolveState::kNone || options < pick_options ||
                (options == pick_options && g_.degree(v) > g_.degree(pick))) {
                pick = v;
                pick_options = options;
            }
        }

        ++colored_;
        for (std::size_t c = 0; c < used; ++c) {
            if (!state_.allowed(pick, c)) continue;
            state_.assign(pick, c);
            search(used);
            state_.unassign(pick);
            if (aborted_ || done_) break;
        }
        if (!aborted_ && !done_ && used + 1 < best_count_) {
            state_.assign(pick, used);
            search(used + 1);
            state_.unassign(pick);
        }
        --colored_;
    }

    const ConflictGraph& g_;
    RowBound bound_;
    ExactSolveState state_;
    const Deadline& deadline_;
    std::size_t best_count_ = 0;
    std::size_t lower_ = 0;
    std::size_t colored_ = 0;
    std::vector<std::size_t> best_;
    bool aborted_ = false;
    bool done_ = false;
    std::uint64_t nodes_ = 0;
};

}  // namespace

RowAssignment exact_min_rows(const ConflictGraph& g, RowBound bound, const TSets* tsets,
                             const std::vector<std::size_t>& clique, const RowAssignment& upper,
                             std::chrono::duration<double> timeout) {
    const Deadline deadline(timeout);
    RowAssignment fallback = upper;
    fallback.bound = bound;
    fallback.status = SolveStatus::TimeoutFallback;
    if (deadline.zero_budget()) return fallback;
    if (clique.size() > upper.row_count) throw std::invalid_argument("clique larger than the upper bound");

    const std::size_t n = g.vertex_count();
    std::size_t lower = clique.size();
    if (bound && *bound > 0) lower = std::max(lower, (n + *bound - 1) / *bound);
    if (n > 0) lower = std::max<std::size_t>(lower, 1);

    RowBranchAndBound bb(g, bound, tsets, upper.row_count, deadline);
    if (!bb.run(clique, upper.row_count, lower)) return fallback;
    if (!bb.improved()) {
        RowAssignment a = upper;
        a.bound = bound;
        a.status = SolveStatus::Optimal;
        return a;
    }
    return from_colors(bb.best(), bound, SolveStatus::Optimal);
}

RowAssignment solve_rows(const ConflictModel& model, const RowSolveOptions& opts) {
    const auto& g = model.graph;
    const TSets* ts = model.tsets ? &*model.tsets : nullptr;
    if (opts.bound && *opts.bound == 2 && !opts.force_coloring_for_b2) return match_pairs_b2(g);
    RowAssignment heuristic = dsatur(g, opts.bound, ts);
    if (opts.mode == SolveMode::Heuristic) return heuristic;
    return exact_min_rows(g, opts.bound, ts, greedy_clique(g), heuristic, opts.timeout);
}

}  // namespace linzip
