#include <chrono>
#include <random>

#include "doctest.h"
#include "linzip/compress.hpp"
#include "support.hpp"

using namespace linzip;
using namespace std::chrono_literals;

namespace {

ConflictGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
    std::bernoulli_distribution edge(p);
    ConflictGraph g(n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (edge(rng)) g.add_edge(u, v);
        }
    }
    return g;
}

std::vector<std::vector<bool>> adjacency(const ConflictGraph& g) {
    std::vector<std::vector<bool>> a(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
    for (const auto& [u, v] : g.edges()) a[u][v] = a[v][u] = true;
    return a;
}

oracle::Constraints graph_constraints(const ConflictGraph& g) {
    oracle::Constraints c;
    c.n = g.vertex_count();
    c.pair_conflict = adjacency(g);
    return c;
}

void check_rows_well_formed(const RowAssignment& a, std::size_t n) {
    REQUIRE(a.row_of.size() == n);
    std::vector<std::size_t> size(a.row_count, 0);
    for (auto r : a.row_of) {
        REQUIRE(r < a.row_count);
        ++size[r];
    }
    for (auto s : size) CHECK(s > 0);
}

}  // namespace

TEST_SUITE("compress") {

TEST_CASE("variant names") {
    CHECK(to_string(Variant::TwoLane) == "g3");
    CHECK(parse_variant("g0") == Variant::Linear);
    CHECK_THROWS_AS(parse_variant("g4"), std::invalid_argument);
}

TEST_CASE("graph basics") {
    ConflictGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    g.add_edge(2, 1);
    CHECK(g.edge_count() == 2);
    CHECK(g.neighbors(1) == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(g.add_edge(3, 3), std::invalid_argument);
    const auto c = g.complement();
    CHECK(c.edge_count() == 4);
    CHECK_FALSE(c.adjacent(0, 1));
    CHECK(c.adjacent(0, 3));
}

TEST_CASE("toy conflict graphs") {
    const auto m = build_membership_matrix(support::toy());
    const auto ord = ColumnOrder::identity(4);
    CHECK(build_conflict_graph(m, Variant::Disjoint, ord).graph.edge_count() == 0);
    const auto g2 = build_conflict_graph(m, Variant::NoAlternation, ord).graph;
    CHECK(g2.edge_count() == 1);
    CHECK(g2.adjacent(0, 1));
    const auto g0 = build_conflict_graph(m, Variant::Linear, ord).graph;
    CHECK(g0.edge_count() == 3);
}

TEST_CASE("intersecting sets conflict in every variant") {
    const auto sys = SetSystem::create({"a", "b"}, {{"X", {"a", "b"}}, {"Y", {"b"}}});
    const auto m = build_membership_matrix(sys);
    for (auto v : {Variant::Disjoint, Variant::NoAlternation, Variant::TwoLane, Variant::Linear}) {
        CHECK(build_conflict_graph(m, v, ColumnOrder::identity(2)).graph.adjacent(0, 1));
    }
}

TEST_CASE("no-alternation edges contain disjointness edges and alternating pairs") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        const auto dense = oracle::random_matrix(rng, 7, 9, 0.2);
        const auto m = build_membership_matrix(support::system_from(dense));
        std::vector<std::size_t> perm(9);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        const ColumnOrder ord(perm);
        const auto g1 = build_conflict_graph(m, Variant::Disjoint, ord).graph;
        const auto g2 = build_conflict_graph(m, Variant::NoAlternation, ord).graph;
        for (std::size_t a = 0; a < 7; ++a) {
            for (std::size_t b = a + 1; b < 7; ++b) {
                CHECK(g1.adjacent(a, b) == oracle::intersect(dense, a, b));
                if (g1.adjacent(a, b)) CHECK(g2.adjacent(a, b));
                if (!g1.adjacent(a, b) && alternates(a, b, m, ord)) CHECK(g2.adjacent(a, b));
            }
        }
    }
}

TEST_CASE("order size must match") {
    const auto m = build_membership_matrix(support::toy());
    CHECK_THROWS_AS(build_conflict_graph(m, Variant::NoAlternation, ColumnOrder::identity(3)), std::invalid_argument);
}

TEST_CASE("T-sets") {
    const auto ts = compute_t_sets({{1, 3}, {2, 2}});
    CHECK(ts.per_set[1] == std::vector<std::size_t>{0, 1});
    CHECK(ts.per_set[0] == std::vector<std::size_t>{0});
    const auto apart = compute_t_sets({{1, 1}, {2, 3}, {4, 6}});
    for (std::size_t s = 0; s < 3; ++s) CHECK(apart.per_set[s] == std::vector<std::size_t>{s});
    CHECK(apart.constraints().empty());
}

TEST_CASE("every commonly overlapping triple lies in some T-set") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng() % 7;
        std::vector<ActiveRange> ranges;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t s = 1 + rng() % 10;
            ranges.push_back({s, s + rng() % 5});
        }
        const auto ts = compute_t_sets(ranges);
        std::vector<std::size_t> triples(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                for (std::size_t c = b + 1; c < n; ++c) {
                    const std::size_t lo = std::max({ranges[a].start, ranges[b].start, ranges[c].start});
                    const std::size_t hi = std::min({ranges[a].end, ranges[b].end, ranges[c].end});
                    if (lo > hi) continue;
                    ++triples[a];
                    ++triples[b];
                    ++triples[c];
                    bool covered = false;
                    for (const auto& t : ts.per_set) {
                        auto has = [&](std::size_t x) { return std::find(t.begin(), t.end(), x) != t.end(); };
                        covered = covered || (has(a) && has(b) && has(c));
                    }
                    CHECK(covered);
                }
            }
        }
        CHECK(ts.triple_count == triples);
    }
}

TEST_CASE("greedy clique") {
    ConflictGraph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    CHECK(greedy_clique(tri).size() == 3);
    CHECK(greedy_clique(ConflictGraph(5)).size() == 1);
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_graph(rng, 12, 0.5);
        const auto k = greedy_clique(g);
        for (std::size_t i = 0; i < k.size(); ++i) {
            for (std::size_t j = i + 1; j < k.size(); ++j) CHECK(g.adjacent(k[i], k[j]));
        }
    }
}

TEST_CASE("dsatur small cases") {
    ConflictGraph path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    const auto p = dsatur(path, kUnbounded);
    CHECK(p.row_count == 2);
    CHECK(p.row_of[0] == p.row_of[2]);
    CHECK(p.row_of[1] != p.row_of[0]);
    CHECK(p.status == SolveStatus::HeuristicOnly);

    const auto e = dsatur(ConflictGraph(7), 3);
    REQUIRE(e.row_count == 3);
    std::vector<std::size_t> sizes;
    for (const auto& row : e.rows()) sizes.push_back(row.size());
    CHECK(sizes == std::vector<std::size_t>{3, 3, 1});
}

TEST_CASE("dsatur produces valid assignments for every variant") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 40; ++trial) {
        const auto dense = oracle::random_matrix(rng, 10, 12, 0.12);
        const auto m = build_membership_matrix(support::system_from(dense));
        std::vector<std::size_t> perm(12);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int v = 1; v <= 3; ++v) {
            const auto variant = static_cast<Variant>(v);
            const auto model = build_conflict_graph(m, variant, ColumnOrder(perm));
            const auto c = oracle::constraints(dense, perm, v);
            for (RowBound b : {kUnbounded, RowBound{3}}) {
                const auto a = dsatur(model.graph, b, model.tsets ? &*model.tsets : nullptr);
                check_rows_well_formed(a, 10);
                CHECK(oracle::valid_partition(c, a.row_of, b));
                CHECK(assignment_violations(model, b, a).empty());
            }
        }
    }
}

TEST_CASE("assignment_violations reports broken constraints") {
    const auto m = build_membership_matrix(support::toy());
    const auto model = build_conflict_graph(m, Variant::NoAlternation, ColumnOrder::identity(4));
    RowAssignment bad;
    bad.row_of = {0, 0, 0};
    bad.row_count = 1;
    CHECK_FALSE(assignment_violations(model, kUnbounded, bad).empty());
    RowAssignment ok;
    ok.row_of = {0, 1, 0};
    ok.row_count = 2;
    CHECK(assignment_violations(model, kUnbounded, ok).empty());
    CHECK_FALSE(assignment_violations(model, RowBound{1}, ok).empty());
}

TEST_CASE("exact rows: small cases") {
    ConflictGraph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(0, 2);
    const auto up = dsatur(tri, kUnbounded);
    const auto a = exact_min_rows(tri, kUnbounded, nullptr, greedy_clique(tri), up, 10s);
    CHECK(a.row_count == 3);
    CHECK(a.status == SolveStatus::Optimal);

    const auto sys = SetSystem::create({"a", "b", "c"}, {{"X", {"a"}}, {"Y", {"b"}}, {"Z", {"c"}}});
    const auto model = build_conflict_graph(build_membership_matrix(sys), Variant::Disjoint, ColumnOrder::identity(3));
    RowSolveOptions opts;
    CHECK(solve_rows(model, opts).row_count == 1);
}

TEST_CASE("exact rows match exhaustive search on random graphs") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const auto g = random_graph(rng, n, 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100.0);
        const auto c = graph_constraints(g);
        for (RowBound b : {kUnbounded, RowBound{2}, RowBound{3}}) {
            const auto up = dsatur(g, b);
            const auto a = exact_min_rows(g, b, nullptr, greedy_clique(g), up, 30s);
            CHECK(a.status == SolveStatus::Optimal);
            check_rows_well_formed(a, n);
            CHECK(oracle::valid_partition(c, a.row_of, b));
            CHECK(a.row_count == oracle::min_rows(c, b));
            CHECK(a.row_count <= up.row_count);
        }
    }
}

TEST_CASE("exact solve state bookkeeping") {
    ConflictGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    ExactSolveState st(g, RowBound{2}, nullptr, 3);
    st.fix_clique({0, 1});
    CHECK(st.color_of(0) == 0);
    CHECK(st.color_of(1) == 1);
    CHECK(st.x(0, 0));
    CHECK(st.y(1));
    CHECK_FALSE(st.y(2));
    CHECK_FALSE(st.allowed(2, 1));
    CHECK(st.allowed(2, 0));
    st.assign(2, 0);
    CHECK_FALSE(st.allowed(3, 0));  // class 0 is full under bound 2
    CHECK(st.allowed(3, 1));
    st.unassign(2);
    CHECK_FALSE(st.colored(2));
    CHECK(st.class_size(0) == 1);
    CHECK(st.allowed(3, 0));
}

TEST_CASE("exact solver honours T-sets") {
    // Three pairwise disjoint sets whose ranges all cover column 2: a, x, b | y | c ... arranged so.
    const auto sys = SetSystem::create({"a", "b", "c", "d", "e", "f"},
                                       {{"A", {"a", "f"}}, {"B", {"b", "e"}}, {"C", {"c", "d"}}});
    const auto m = build_membership_matrix(sys);
    const auto model = build_conflict_graph(m, Variant::TwoLane, ColumnOrder::identity(6));
    REQUIRE(model.tsets);
    RowSolveOptions opts;
    const auto a = solve_rows(model, opts);
    CHECK(a.row_count == 2);
    CHECK(assignment_violations(model, kUnbounded, a).empty());
    opts.mode = SolveMode::Heuristic;
    CHECK(assignment_violations(model, kUnbounded, solve_rows(model, opts)).empty());
}

TEST_CASE("timeout zero returns the heuristic") {
    std::mt19937_64 rng(61);
    const auto g = random_graph(rng, 9, 0.4);
    const auto up = dsatur(g, RowBound{3});
    const auto a = exact_min_rows(g, RowBound{3}, nullptr, greedy_clique(g), up, 0s);
    CHECK(a.status == SolveStatus::TimeoutFallback);
    CHECK(a.row_of == up.row_of);
}

TEST_CASE("matching") {
    ConflictGraph none(3);  // three mutually compatible sets
    const auto a = match_pairs_b2(none);
    CHECK(a.row_count == 2);
    CHECK(a.status == SolveStatus::Optimal);
    ConflictGraph full(4);
    for (std::size_t u = 0; u < 4; ++u) {
        for (std::size_t v = u + 1; v < 4; ++v) full.add_edge(u, v);
    }
    CHECK(match_pairs_b2(full).row_count == 4);
}

TEST_CASE("matching equals exhaustive pairing") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto g = random_graph(rng, n, static_cast<double>(rng() % 100) / 100.0);
        const auto a = match_pairs_b2(g);
        check_rows_well_formed(a, n);
        CHECK(oracle::valid_partition(graph_constraints(g), a.row_of, RowBound{2}));
        CHECK(a.row_count == n - oracle::max_pairs(adjacency(g)));

        const auto mate = maximum_matching(g.complement());
        for (std::size_t v = 0; v < n; ++v) {
            CHECK(mate[mate[v]] == v);
            if (mate[v] != v) CHECK_FALSE(g.adjacent(v, mate[v]));
        }
    }
}

TEST_CASE("bound 2 uses matching unless coloring is forced") {
    std::mt19937_64 rng(71);
    const auto dense = oracle::random_matrix(rng, 8, 10, 0.15);
    const auto model = build_conflict_graph(build_membership_matrix(support::system_from(dense)), Variant::Disjoint,
                                            ColumnOrder::identity(10));
    RowSolveOptions opts;
    opts.bound = 2;
    opts.mode = SolveMode::Heuristic;
    const auto matched = solve_rows(model, opts);
    CHECK(matched.status == SolveStatus::Optimal);
    opts.force_coloring_for_b2 = true;
    const auto colored = solve_rows(model, opts);
    CHECK(colored.status == SolveStatus::HeuristicOnly);
    CHECK(colored.row_count >= matched.row_count);
}

}
