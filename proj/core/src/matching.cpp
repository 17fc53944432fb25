#include <algorithm>
#include <queue>

#include "linzip/compress.hpp"

namespace linzip {

namespace {

// Edmonds' blossom algorithm, O(V^3). Augmenting paths are grown by BFS from each exposed
// vertex; odd cycles are contracted by relabeling their base.
class BlossomMatcher {
public:
    explicit BlossomMatcher(const ConflictGraph& g)
        : g_(g), n_(g.vertex_count()), match_(n_, kNone), parent_(n_), base_(n_), used_(n_), blossom_(n_) {}

    std::vector<std::size_t> run() {
        for (std::size_t root = 0; root < n_; ++root) {
            if (match_[root] != kNone) continue;
            std::size_t v = find_path(root);
            while (v != kNone) {
                const std::size_t pv = parent_[v];
                const std::size_t ppv = match_[pv];
                match_[v] = pv;
                match_[pv] = v;
                v = ppv;
            }
        }
        std::vector<std::size_t> mate(n_);
        for (std::size_t v = 0; v < n_; ++v) mate[v] = match_[v] == kNone ? v : match_[v];
        return mate;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t lca(std::size_t a, std::size_t b) {
        std::vector<bool> seen(n_, false);
        for (;;) {
            a = base_[a];
            seen[a] = true;
            if (match_[a] == kNone) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(std::size_t v, std::size_t b, std::size_t child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[match_[v]]] = true;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    std::size_t find_path(std::size_t root) {
        std::fill(used_.begin(), used_.end(), false);
        std::fill(parent_.begin(), parent_.end(), kNone);
        for (std::size_t i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = true;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (auto to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] != kNone && parent_[match_[to]] != kNone)) {
                    const std::size_t cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), false);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (std::size_t i = 0; i < n_; ++i) {
                        if (blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = true;
                                q.push(i);
                            }
                        }
                    }
                } else if (parent_[to] == kNone) {
                    parent_[to] = v;
                    if (match_[to] == kNone) return to;
                    used_[match_[to]] = true;
                    q.push(match_[to]);
                }
            }
        }
        return kNone;
    }

    const ConflictGraph& g_;
    std::size_t n_;
    std::vector<std::size_t> match_;
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> base_;
    std::vector<bool> used_;
    std::vector<bool> blossom_;
};

}  // namespace

std::vector<std::size_t> maximum_matching(const ConflictGraph& g) { return BlossomMatcher(g).run(); }

RowAssignment match_pairs_b2(const ConflictGraph& g) {
    const std::size_t n = g.vertex_count();
    const auto mate = maximum_matching(g.complement());
    RowAssignment a;
    a.bound = 2;
    a.status = SolveStatus::Optimal;
    a.row_of.assign(n, 0);
    std::vector<bool> done(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        if (done[v]) continue;
        done[v] = done[mate[v]] = true;
        a.row_of[v] = a.row_of[mate[v]] = a.row_count++;
    }
    return a;
}

}  // namespace linzip
