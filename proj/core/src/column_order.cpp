#include "linzip/column_order.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "linzip/random.hpp"

namespace linzip {

namespace {

using Tour = std::vector<std::size_t>;

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Dense view of a subset of TSP nodes: local index -> distance.
struct SubProblem {
    std::vector<std::size_t> nodes;  // global node ids; the last one is the auxiliary node
    std::vector<int> dist;

    std::size_t size() const { return nodes.size(); }
    int d(std::size_t i, std::size_t j) const { return dist[i * nodes.size() + j]; }
};

SubProblem make_subproblem(const TspInstance& inst, std::vector<std::size_t> nodes) {
    SubProblem sp;
    sp.nodes = std::move(nodes);
    const std::size_t n = sp.nodes.size();
    sp.dist.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sp.dist[i * n + j] = inst.distance(sp.nodes[i], sp.nodes[j]);
    }
    return sp;
}

std::int64_t cycle_cost(const SubProblem& sp, const Tour& t) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < t.size(); ++i) c += sp.d(t[i], t[(i + 1) % t.size()]);
    return c;
}

// Tours below are local index sequences starting with the auxiliary node (local index n-1).

Tour nearest_neighbour(const SubProblem& sp) {
    const std::size_t n = sp.size();
    Tour t{n - 1};
    std::vector<bool> used(n, false);
    used[n - 1] = true;
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t cur = t.back();
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && (best == n || sp.d(cur, j) < sp.d(cur, best))) best = j;
        }
        used[best] = true;
        t.push_back(best);
    }
    return t;
}

// Reverses t[i..j]; position 0 (auxiliary) never moves.
bool two_opt_pass(const SubProblem& sp, Tour& t) {
    const std::size_t n = t.size();
    bool improved = false;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::size_t a = t[i - 1], b = t[i], c = t[j], e = t[(j + 1) % n];
            const int delta = sp.d(a, c) + sp.d(b, e) - sp.d(a, b) - sp.d(c, e);
            if (delta < 0) {
                std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                improved = true;
            }
        }
    }
    return improved;
}

// Moves a segment of length 1..3 to another gap.
bool or_opt_pass(const SubProblem& sp, Tour& t) {
    const std::size_t n = t.size();
    bool improved = false;
    for (std::size_t len = 1; len <= 3; ++len) {
        for (std::size_t i = 1; i + len <= n; ++i) {
            const std::size_t last = i + len - 1;
            const std::size_t prev = t[i - 1], first = t[i], tail = t[last], next = t[(last + 1) % n];
            const int removed = sp.d(prev, first) + sp.d(tail, next) - sp.d(prev, next);
            // try inserting between t[k] and t[k+1], outside the segment
            for (std::size_t k = 0; k < n; ++k) {
                if (k + 1 >= i && k <= last) continue;
                const std::size_t u = t[k], v = t[(k + 1) % n];
                const int fwd = sp.d(u, first) + sp.d(tail, v) - sp.d(u, v);
                const int rev = sp.d(u, tail) + sp.d(first, v) - sp.d(u, v);
                const int add = std::min(fwd, rev);
                if (add - removed < 0) {
                    Tour seg(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(last) + 1);
                    if (rev < fwd) std::reverse(seg.begin(), seg.end());
                    Tour rest;
                    rest.reserve(n);
                    for (std::size_t p = 0; p < n; ++p) {
                        if (p >= i && p <= last) continue;
                        rest.push_back(t[p]);
                        if (p == k) rest.insert(rest.end(), seg.begin(), seg.end());
                    }
                    t = std::move(rest);
                    improved = true;
                    break;
                }
            }
            if (improved) return true;
        }
    }
    return improved;
}

void local_descent(const SubProblem& sp, Tour& t) {
    if (t.size() < 4) return;
    for (;;) {
        bool changed = two_opt_pass(sp, t);
        while (or_opt_pass(sp, t)) changed = true;
        if (!changed) break;
    }
}

// Fixed schedule: start temperature 2.0, geometric cooling to 0.05 over
// clamp(40 * n^2, 2000, 200000) random 2-opt moves.
void anneal(const SubProblem& sp, Tour& t, Rng& rng) {
    const std::size_t n = t.size();
    if (n < 4) return;
    const std::size_t steps = std::clamp<std::size_t>(40 * n * n, 2000, 200000);
    const double t_start = 2.0, t_end = 0.05;
    const double cool = std::pow(t_end / t_start, 1.0 / static_cast<double>(steps));
    double temp = t_start;
    std::int64_t cost = cycle_cost(sp, t);
    Tour best = t;
    std::int64_t best_cost = cost;
    for (std::size_t s = 0; s < steps; ++s, temp *= cool) {
        std::size_t i = 1 + uniform_below(rng, n - 1);
        std::size_t j = 1 + uniform_below(rng, n - 1);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const std::size_t a = t[i - 1], b = t[i], c = t[j], e = t[(j + 1) % n];
        const int delta = sp.d(a, c) + sp.d(b, e) - sp.d(a, b) - sp.d(c, e);
        if (delta <= 0 || unit_double(rng) < std::exp(-static_cast<double>(delta) / temp)) {
            std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i), t.begin() + static_cast<std::ptrdiff_t>(j) + 1);
            cost += delta;
            if (cost < best_cost) {
                best_cost = cost;
                best = t;
            }
        }
    }
    t = std::move(best);
}

Tour heuristic_tour(const SubProblem& sp, std::uint64_t seed) {
    Tour t = nearest_neighbour(sp);
    local_descent(sp, t);
    Rng rng(seed);
    Tour annealed = t;
    anneal(sp, annealed, rng);
    local_descent(sp, annealed);
    return cycle_cost(sp, annealed) < cycle_cost(sp, t) ? annealed : t;
}

struct ExactOutcome {
    bool finished = false;
    Tour tour;  // local indices, auxiliary first
    std::int64_t cost = 0;
};

// Held-Karp over the non-auxiliary nodes; requires size() - 1 <= 20.
ExactOutcome held_karp(const SubProblem& sp, const Deadline& deadline) {
    const std::size_t m = sp.size() - 1;
    const std::size_t aux = m;
    ExactOutcome out;
    if (m == 0) {
        out.finished = true;
        out.tour = {aux};
        return out;
    }
    const std::size_t full = (std::size_t{1} << m) - 1;
    std::vector<std::int64_t> dp((full + 1) * m, kInf);
    for (std::size_t v = 0; v < m; ++v) dp[(std::size_t{1} << v) * m + v] = sp.d(aux, v);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        if ((mask & 0x3ff) == 0 && deadline.expired()) return out;
        for (std::size_t last = 0; last < m; ++last) {
            const std::int64_t cur = dp[mask * m + last];
            if (cur >= kInf || !(mask >> last & 1U)) continue;
            for (std::size_t nxt = 0; nxt < m; ++nxt) {
                if (mask >> nxt & 1U) continue;
                const std::size_t nm = mask | (std::size_t{1} << nxt);
                const std::int64_t cand = cur + sp.d(last, nxt);
                if (cand < dp[nm * m + nxt]) dp[nm * m + nxt] = cand;
            }
        }
    }
    std::int64_t best = kInf;
    std::size_t best_last = 0;
    for (std::size_t v = 0; v < m; ++v) {
        const std::int64_t c = dp[full * m + v] + sp.d(v, aux);
        if (c < best) {
            best = c;
            best_last = v;
        }
    }
    // Walk back from the end, choosing the lowest-index predecessor among ties.
    Tour rev;
    std::size_t mask = full, last = best_last;
    while (true) {
        rev.push_back(last);
        const std::size_t pm = mask & ~(std::size_t{1} << last);
        if (pm == 0) break;
        for (std::size_t p = 0; p < m; ++p) {
            if ((pm >> p & 1U) && dp[pm * m + p] + sp.d(p, last) == dp[mask * m + last]) {
                mask = pm;
                last = p;
                break;
            }
        }
    }
    out.tour = {aux};
    out.tour.insert(out.tour.end(), rev.rbegin(), rev.rend());
    out.cost = best;
    out.finished = true;
    return out;
}

// Branch and bound for the symmetric tour problem: Held-Karp 1-tree bound with Lagrangian
// node penalties, branching on the edges of a node of degree > 2 in the bounding tree.
class OneTreeSearch {
public:
    OneTreeSearch(const SubProblem& sp, const Deadline& deadline)
        : sp_(sp), deadline_(deadline), n_(sp.size()), special_(sp.size() - 1) {}

    ExactOutcome solve(Tour incumbent) {
        best_ = std::move(incumbent);
        best_cost_ = cycle_cost(sp_, best_);
        std::vector<std::int8_t> state(n_ * n_, 0);
        for (std::size_t i = 0; i < n_; ++i) state[i * n_ + i] = kOut;
        std::vector<double> pi(n_, 0.0);
        aborted_ = false;
        if (propagate(state)) branch(std::move(state), std::move(pi), true);
        ExactOutcome out;
        out.finished = !aborted_;
        out.tour = best_;
        out.cost = best_cost_;
        return out;
    }

private:
    static constexpr std::int8_t kIn = 1;
    static constexpr std::int8_t kOut = -1;
    static constexpr double kForcedBonus = 1e9;

    struct TreeResult {
        bool feasible = false;
        double value = 0.0;
        std::int64_t plain_cost = 0;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::vector<int> degree;
    };

    static std::int64_t ceil_even(double x) {
        auto k = static_cast<std::int64_t>(std::ceil(x - 1e-7));
        return k + (k & 1);
    }

    std::int8_t& at(std::vector<std::int8_t>& s, std::size_t i, std::size_t j) const { return s[i * n_ + j]; }
    std::int8_t get(const std::vector<std::int8_t>& s, std::size_t i, std::size_t j) const { return s[i * n_ + j]; }

    void set_edge(std::vector<std::int8_t>& s, std::size_t i, std::size_t j, std::int8_t v) const {
        s[i * n_ + j] = v;
        s[j * n_ + i] = v;
    }

    // Forced-edge consistency to a fixpoint. False when no tour satisfies the state.
    bool propagate(std::vector<std::int8_t>& s) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < n_; ++v) {
                int in = 0, open = 0;
                for (std::size_t u = 0; u < n_; ++u) {
                    if (get(s, v, u) == kIn) ++in;
                    if (get(s, v, u) == 0) ++open;
                }
                if (in > 2 || in + open < 2) return false;
                if (open == 0) continue;
                if (in == 2 || in + open == 2) {
                    const std::int8_t fill = in == 2 ? kOut : kIn;
                    for (std::size_t u = 0; u < n_; ++u) {
                        if (get(s, v, u) == 0) set_edge(s, v, u, fill);
                    }
                    changed = true;
                }
            }
            // Forced edges form paths; close no path early.
            std::vector<std::size_t> deg(n_, 0);
            std::vector<std::array<std::size_t, 2>> adj(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                for (std::size_t u = 0; u < n_; ++u) {
                    if (get(s, v, u) == kIn) adj[v][deg[v]++] = u;
                }
            }
            std::vector<bool> seen(n_, false);
            for (std::size_t v = 0; v < n_; ++v) {
                if (seen[v] || deg[v] == 2) continue;
                seen[v] = true;
                if (deg[v] == 0) continue;
                std::size_t prev = v, cur = adj[v][0], count = 2;
                seen[cur] = true;
                while (deg[cur] == 2) {
                    const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                    prev = cur;
                    cur = nxt;
                    seen[cur] = true;
                    ++count;
                }
                if (count < n_ && get(s, v, cur) == 0) {
                    set_edge(s, v, cur, kOut);
                    changed = true;
                }
            }
            // Whatever is left unseen lies on cycles of forced edges.
            std::size_t on_cycles = 0;
            for (std::size_t v = 0; v < n_; ++v) on_cycles += seen[v] ? 0 : 1;
            if (on_cycles > 0 && on_cycles < n_) return false;
            if (on_cycles == n_) {
                std::vector<bool> walk(n_, false);
                std::size_t prev = 0, cur = adj[0][0], count = 1;
                walk[0] = true;
                while (cur != 0) {
                    walk[cur] = true;
                    const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                    prev = cur;
                    cur = nxt;
                    ++count;
                }
                if (count < n_) return false;
            }
        }
        return true;
    }

    TreeResult one_tree(const std::vector<std::int8_t>& s, const std::vector<double>& pi) const {
        TreeResult r;
        r.degree.assign(n_, 0);
        const std::size_t m = n_ - 1;  // spanning tree over every node except special_
        auto weight = [&](std::size_t i, std::size_t j) { return sp_.d(i, j) + pi[i] + pi[j]; };
        auto key_of = [&](std::size_t i, std::size_t j) {
            return get(s, i, j) == kIn ? weight(i, j) - kForcedBonus : weight(i, j);
        };
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<double> key(m, inf);
        std::vector<std::size_t> parent(m, m);
        std::vector<bool> in_tree(m, false);
        key[0] = 0.0;
        for (std::size_t it = 0; it < m; ++it) {
            std::size_t u = m;
            for (std::size_t i = 0; i < m; ++i) {
                if (!in_tree[i] && key[i] < inf && (u == m || key[i] < key[u])) u = i;
            }
            if (u == m) return r;
            in_tree[u] = true;
            if (parent[u] != m) r.edges.emplace_back(parent[u], u);
            for (std::size_t v = 0; v < m; ++v) {
                if (in_tree[v] || get(s, u, v) == kOut) continue;
                const double k = key_of(u, v);
                if (k < key[v]) {
                    key[v] = k;
                    parent[v] = u;
                }
            }
        }
        // Two edges at the special node, forced ones first.
        std::size_t first = m, second = m;
        auto better = [&](std::size_t a, std::size_t b) {
            if (b == m) return true;
            const bool fa = get(s, special_, a) == kIn, fb = get(s, special_, b) == kIn;
            if (fa != fb) return fa;
            return weight(special_, a) < weight(special_, b);
        };
        for (std::size_t v = 0; v < m; ++v) {
            if (get(s, special_, v) == kOut) continue;
            if (better(v, first)) {
                second = first;
                first = v;
            } else if (better(v, second)) {
                second = v;
            }
        }
        if (second == m) return r;
        r.edges.emplace_back(special_, first);
        r.edges.emplace_back(special_, second);
        for (const auto& [a, b] : r.edges) {
            r.value += weight(a, b);
            r.plain_cost += sp_.d(a, b);
            ++r.degree[a];
            ++r.degree[b];
        }
        for (double p : pi) r.value -= 2.0 * p;
        r.feasible = true;
        return r;
    }

    // Every node has degree 2, so the 1-tree is a tour.
    void record_tour(const TreeResult& t) {
        if (t.plain_cost >= best_cost_) return;
        std::vector<std::array<std::size_t, 2>> adj(n_);
        std::vector<std::size_t> deg(n_, 0);
        for (const auto& [a, b] : t.edges) {
            adj[a][deg[a]++] = b;
            adj[b][deg[b]++] = a;
        }
        Tour tour{special_};
        std::size_t prev = special_, cur = std::min(adj[special_][0], adj[special_][1]);
        while (cur != special_) {
            tour.push_back(cur);
            const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
        }
        best_ = std::move(tour);
        best_cost_ = t.plain_cost;
    }

    void branch(std::vector<std::int8_t> state, std::vector<double> pi, bool root) {
        if (aborted_) return;
        const int max_iter = root ? static_cast<int>(std::max<std::size_t>(200, 20 * n_)) : 60;
        const int patience = root ? static_cast<int>(std::max<std::size_t>(10, n_ / 2)) : 8;
        double lambda = root ? 2.0 : 1.0;
        double best_value = -std::numeric_limits<double>::infinity();
        TreeResult best_tree;
        std::vector<double> best_pi = pi;
        int stale = 0;
        for (int it = 0; it < max_iter; ++it) {
            if (deadline_.expired()) {
                aborted_ = true;
                return;
            }
            TreeResult t = one_tree(state, pi);
            if (!t.feasible) return;
            double norm2 = 0.0;
            for (int d : t.degree) norm2 += static_cast<double>((d - 2) * (d - 2));
            if (norm2 == 0.0) {
                record_tour(t);
                return;
            }
            const std::vector<int> deg = t.degree;
            const double value = t.value;
            if (value > best_value + 1e-9) {
                best_value = value;
                best_tree = std::move(t);
                best_pi = pi;
                stale = 0;
            } else if (++stale >= patience) {
                lambda *= 0.5;
                stale = 0;
                if (lambda < 1e-3) break;
            }
            if (ceil_even(best_value) >= best_cost_) return;
            const double step = lambda * (static_cast<double>(best_cost_) - value) / norm2;
            for (std::size_t v = 0; v < n_; ++v) pi[v] += step * (deg[v] - 2);
        }
        if (ceil_even(best_value) >= best_cost_) return;

        // Branch node: the one with the largest tree degree, lowest index on ties.
        std::size_t v = 0;
        for (std::size_t i = 1; i < n_; ++i) {
            if (best_tree.degree[i] > best_tree.degree[v]) v = i;
        }
        std::vector<std::size_t> open;
        int forced = 0;
        for (const auto& [a, b] : best_tree.edges) {
            if (a != v && b != v) continue;
            const std::size_t u = a == v ? b : a;
            if (get(state, v, u) == kIn) {
                ++forced;
            } else {
                open.push_back(u);
            }
        }
        auto w = [&](std::size_t u) { return sp_.d(v, u) + best_pi[v] + best_pi[u]; };
        std::stable_sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) { return w(a) < w(b); });
        const std::size_t e1 = open[0];

        auto child = [&](auto&& edit) {
            if (aborted_) return;
            auto s = state;
            edit(s);
            if (propagate(s)) branch(std::move(s), best_pi, false);
        };
        if (forced == 0 && open.size() >= 2) {
            const std::size_t e2 = open[1];
            child([&](auto& s) {
                set_edge(s, v, e1, kIn);
                set_edge(s, v, e2, kIn);
            });
            child([&](auto& s) {
                set_edge(s, v, e1, kIn);
                set_edge(s, v, e2, kOut);
            });
        } else {
            child([&](auto& s) { set_edge(s, v, e1, kIn); });
        }
        child([&](auto& s) { set_edge(s, v, e1, kOut); });
    }

    const SubProblem& sp_;
    const Deadline& deadline_;
    std::size_t n_;
    std::size_t special_;
    Tour best_;
    std::int64_t best_cost_ = kInf;
    bool aborted_ = false;
};

constexpr std::size_t kHeldKarpMaxColumns = 16;

ExactOutcome solve_exact_sub(const SubProblem& sp, const Deadline& deadline, std::uint64_t seed) {
    if (sp.size() - 1 <= kHeldKarpMaxColumns) return held_karp(sp, deadline);
    OneTreeSearch search(sp, deadline);
    return search.solve(heuristic_tour(sp, seed));
}

// Connected components of reduced columns, two columns linked when they share a row.
std::vector<std::vector<std::size_t>> column_components(const MembershipMatrix& reduced) {
    const std::size_t c = reduced.cols();
    std::vector<std::size_t> parent(c);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
        std::size_t first = c;
        for (std::size_t k = 0; k < c; ++k) {
            if (!reduced.at(r, k)) continue;
            if (first == c) {
                first = k;
            } else {
                parent[find(k)] = find(first);
            }
        }
    }
    std::vector<std::vector<std::size_t>> comps;
    std::vector<std::size_t> slot(c, c);
    for (std::size_t k = 0; k < c; ++k) {
        const std::size_t root = find(k);
        if (slot[root] == c) {
            slot[root] = comps.size();
            comps.emplace_back();
        }
        comps[slot[root]].push_back(k);
    }
    return comps;
}

TourResult finish(const TspInstance& inst, Tour tour, SolveStatus status) {
    TourResult res;
    res.tour_cost = tour_cost(inst, tour);
    res.order = tour_to_column_order(tour, inst.aux_index, inst.collapsed.groups);
    // normalize: auxiliary last
    auto it = std::find(tour.begin(), tour.end(), inst.aux_index);
    std::rotate(tour.begin(), it + 1, tour.end());
    res.tour = std::move(tour);
    res.status = status;
    return res;
}

SubProblem whole_instance(const TspInstance& inst) {
    std::vector<std::size_t> nodes(inst.node_count());
    std::iota(nodes.begin(), nodes.end(), std::size_t{0});
    return make_subproblem(inst, std::move(nodes));
}

Tour to_global(const SubProblem& sp, const Tour& local) {
    Tour g;
    g.reserve(local.size());
    for (auto v : local) g.push_back(sp.nodes[v]);
    return g;
}

}  // namespace

std::size_t TspInstance::original_columns() const {
    std::size_t n = 0;
    for (const auto& g : collapsed.groups) n += g.size();
    return n;
}

TspInstance build_tsp_instance(const MembershipMatrix& mat, AuxiliaryColumn aux) {
    TspInstance inst;
    inst.collapsed = collapse_duplicate_columns(mat);
    inst.aux_kind = aux;
    const auto& red = inst.collapsed.reduced;
    inst.aux_index = red.cols();
    const std::size_t n = inst.node_count();
    const std::uint8_t aux_bit = aux == AuxiliaryColumn::Ones ? 1 : 0;
    auto bit = [&](std::size_t r, std::size_t node) -> std::uint8_t {
        return node == inst.aux_index ? aux_bit : static_cast<std::uint8_t>(red.at(r, node));
    };
    inst.dist.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            int d = 0;
            for (std::size_t r = 0; r < red.rows(); ++r) d += bit(r, i) != bit(r, j);
            inst.dist[i * n + j] = inst.dist[j * n + i] = d;
        }
    }
    return inst;
}

std::int64_t tour_cost(const TspInstance& inst, const std::vector<std::size_t>& tour) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < tour.size(); ++i) c += inst.distance(tour[i], tour[(i + 1) % tour.size()]);
    return c;
}

ColumnOrder tour_to_column_order(const std::vector<std::size_t>& tour, std::size_t aux_index,
                                 const std::vector<std::vector<std::size_t>>& groups) {
    auto it = std::find(tour.begin(), tour.end(), aux_index);
    if (it == tour.end()) throw std::invalid_argument("tour does not visit the auxiliary node");
    std::vector<std::size_t> reduced;
    reduced.reserve(tour.size() - 1);
    for (auto p = it + 1; p != tour.end(); ++p) reduced.push_back(*p);
    for (auto p = tour.begin(); p != it; ++p) reduced.push_back(*p);
    return expand_order(ColumnOrder(std::move(reduced)), groups);
}

TourResult solve_tour_heuristic(const TspInstance& inst, std::uint64_t seed) {
    const SubProblem sp = whole_instance(inst);
    return finish(inst, to_global(sp, heuristic_tour(sp, seed)), SolveStatus::HeuristicOnly);
}

TourResult solve_tour_exact(const TspInstance& inst, std::chrono::duration<double> timeout,
                            std::uint64_t fallback_seed) {
    const Deadline deadline(timeout);
    auto fallback = [&] {
        TourResult r = solve_tour_heuristic(inst, fallback_seed);
        r.status = SolveStatus::TimeoutFallback;
        return r;
    };
    if (deadline.zero_budget()) return fallback();

    const auto& red = inst.collapsed.reduced;
    if (inst.aux_kind == AuxiliaryColumn::Zeros) {
        // Blocks are additive over column components, and each component's optimal path
        // starts and ends next to the all-zeros column, so the paths concatenate.
        Tour tour;
        for (const auto& comp : column_components(red)) {
            std::vector<std::size_t> nodes = comp;
            nodes.push_back(inst.aux_index);
            const SubProblem sp = make_subproblem(inst, std::move(nodes));
            auto sub = solve_exact_sub(sp, deadline, fallback_seed);
            if (!sub.finished) return fallback();
            for (std::size_t i = 1; i < sub.tour.size(); ++i) tour.push_back(sp.nodes[sub.tour[i]]);
        }
        tour.push_back(inst.aux_index);
        return finish(inst, std::move(tour), SolveStatus::Optimal);
    }

    const SubProblem sp = whole_instance(inst);
    auto sub = solve_exact_sub(sp, deadline, fallback_seed);
    if (!sub.finished) return fallback();
    return finish(inst, to_global(sp, sub.tour), SolveStatus::Optimal);
}

}  // namespace linzip
