#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "linzip/bench.hpp"
#include "linzip/instance_io.hpp"
#include "linzip/pipeline.hpp"
#include "support.hpp"

using namespace linzip;

namespace {

bool same_system(const SetSystem& a, const SetSystem& b) {
    if (a.elements() != b.elements() || a.set_count() != b.set_count()) return false;
    for (std::size_t s = 0; s < a.set_count(); ++s) {
        if (a.sets()[s].name != b.sets()[s].name || a.sets()[s].members != b.sets()[s].members) return false;
    }
    return true;
}

bool connected(const ConflictGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto v = stack.back();
        stack.pop_back();
        for (auto w : g.neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

PipelineConfig config(Variant v, RowBound b, SolveMode mode) {
    PipelineConfig c;
    c.variant = v;
    c.bound = b;
    c.mode = mode;
    c.timeout_seconds = 60;
    c.seed = 7;
    return c;
}

}  // namespace

TEST_SUITE("instance_io") {

TEST_CASE("json toy") {
    const auto sys = parse_instance_json(R"({"elements":["a","b","c","d"],"sets":{"S1":["a","c"],"S2":["b"],"S3":["d"]}})");
    CHECK(same_system(sys, support::toy()));
}

TEST_CASE("json with a set array and implicit elements") {
    const auto sys = parse_instance_json(
        R"({"sets":[{"name":"S1","members":["a","c"]},{"name":"S2","members":["b"]},{"name":"S3","members":["d"]}]})");
    CHECK(sys.elements() == std::vector<std::string>{"a", "c", "b", "d"});
    CHECK(sys.sets()[0].name == "S1");
}

TEST_CASE("csv toy") {
    const auto sys = parse_instance_csv("set,a,b,c,d\nS1,1,0,1,0\nS2,0,1,0,0\r\nS3,0,0,0,1\n");
    CHECK(same_system(sys, support::toy()));
    const auto quoted = parse_instance_csv("\"\",\"a,1\",b\n\"S \"\"one\"\"\",1,1\n");
    CHECK(quoted.elements()[0] == "a,1");
    CHECK(quoted.sets()[0].name == "S \"one\"");
}

TEST_CASE("input errors name their cause") {
    CHECK_THROWS_WITH_AS(parse_instance_json(R"({"sets":{"A":["a"],"Empty":[]}})"),
                         doctest::Contains("'Empty' is empty"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_json(R"({"sets":{"A":["a"],"A":["b"]}})"), doctest::Contains("duplicate"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_json(R"({"elements":["a"],"sets":{"A":["zz"]}})"), doctest::Contains("zz"),
                         ParseError);
    CHECK_THROWS_AS(parse_instance_json("{not json"), ParseError);
    CHECK_THROWS_AS(parse_instance_json(R"({"sets":{"A":[1]}})"), ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_csv("s,a,b\nX,1,0\nY,0,0\n"), doctest::Contains("line 3: set 'Y' is empty"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_instance_csv("s,a,b\nX,1,2\n"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_instance_csv("s,a,b\nX,1\n"), ParseError);
}

TEST_CASE("files and round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "linzip_io_test";
    std::filesystem::create_directories(dir);
    const auto sys = generate_synthetic({15, 30, 0.4, 3});
    {
        std::ofstream(dir / "x.json") << instance_to_json(sys);
        std::ofstream(dir / "x.csv") << "s,a\nA,1\n";
        std::ofstream(dir / "bad.json") << R"({"sets":{"E":[]}})";
    }
    CHECK(same_system(parse_instance(dir / "x.json"), sys));
    CHECK(parse_instance(dir / "x.csv").set_count() == 1);
    CHECK_THROWS_WITH_AS(parse_instance(dir / "bad.json"), doctest::Contains("bad.json"), ParseError);
    CHECK_THROWS_AS(parse_instance(dir / "missing.json"), ParseError);
    std::filesystem::remove_all(dir);
}

}

TEST_SUITE("synthetic") {

TEST_CASE("density zero gives disjoint sets") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sys = generate_synthetic({12, 40, 0.0, seed});
        const auto m = build_membership_matrix(sys);
        const auto g = build_conflict_graph(m, Variant::Disjoint, ColumnOrder::identity(m.cols())).graph;
        CHECK(g.edge_count() == 0);
        RowSolveOptions opts;
        CHECK(solve_rows(build_conflict_graph(m, Variant::Disjoint, ColumnOrder::identity(m.cols())), opts)
                  .row_count == 1);
    }
}

TEST_CASE("same seed, same instance") {
    CHECK(instance_to_json(generate_synthetic({20, 40, 0.3, 5})) ==
          instance_to_json(generate_synthetic({20, 40, 0.3, 5})));
    CHECK(instance_to_json(generate_synthetic({20, 40, 0.3, 5})) !=
          instance_to_json(generate_synthetic({20, 40, 0.3, 6})));
}

TEST_CASE("density one connects the intersection graph") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sys = generate_synthetic({2 + seed % 20, 60, 1.0, seed});
        const auto m = build_membership_matrix(sys);
        CHECK(connected(build_conflict_graph(m, Variant::Disjoint, ColumnOrder::identity(m.cols())).graph));
    }
}

TEST_CASE("parameter checks") {
    CHECK_THROWS_AS(generate_synthetic({0, 10, 0.3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic({10, 5, 0.3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic({10, 20, 1.5, 1}), std::invalid_argument);
}

}

TEST_SUITE("pipeline") {

TEST_CASE("toy end to end") {
    const auto sys = support::toy();
    const auto g1 = run(config(Variant::Disjoint, kUnbounded, SolveMode::Exact), sys);
    CHECK(g1.metrics.row_count == 1);
    CHECK(g1.metrics.compression_ratio == doctest::Approx(1.0 / 3.0));
    CHECK(g1.metrics.total_blocks == 3);
    CHECK(g1.metrics.status_ord == SolveStatus::Optimal);
    CHECK(g1.metrics.status_comp == SolveStatus::Optimal);

    const auto g0 = run(config(Variant::Linear, kUnbounded, SolveMode::Exact), sys);
    CHECK(g0.metrics.row_count == 3);
    CHECK(g0.metrics.compression_ratio == 1.0);

    const auto g2 = run(config(Variant::NoAlternation, kUnbounded, SolveMode::Exact), sys);
    CHECK(g2.metrics.row_count == 1);
    CHECK(g2.svg.meta.links.empty());
}

TEST_CASE("g2 on a fixed order with a and c adjacent") {
    const auto sys = support::toy();
    const auto m = build_membership_matrix(sys);
    const ColumnOrder ord({1, 0, 2, 3});
    const auto ranges = active_ranges(m, ord);
    CHECK(ranges[0] == ActiveRange{2, 3});
    CHECK(ranges[1] == ActiveRange{1, 1});
    CHECK(ranges[2] == ActiveRange{4, 4});
    RowSolveOptions opts;
    CHECK(solve_rows(build_conflict_graph(m, Variant::NoAlternation, ord), opts).row_count == 1);
}

TEST_CASE("metrics json") {
    const auto r = run(config(Variant::TwoLane, 3, SolveMode::Heuristic), support::toy());
    const auto j = metrics_to_json(r.metrics, false);
    CHECK(j.find("\"t_ord_ms\": null") != std::string::npos);
    CHECK(j.find("\"status_ord\": \"heuristic\"") != std::string::npos);
    CHECK(metrics_to_json(r.metrics, true).find("\"t_ord_ms\": null") == std::string::npos);
}

TEST_CASE("config validation") {
    auto c = config(Variant::Disjoint, 1, SolveMode::Exact);
    CHECK_THROWS_AS(run(c, support::toy()), std::invalid_argument);
    c.bound = kUnbounded;
    c.timeout_seconds = -1;
    CHECK_THROWS_AS(run(c, support::toy()), std::invalid_argument);
}

TEST_CASE("runs are valid and repeatable") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto sys = generate_synthetic({25, 50, 0.35, seed});
        for (auto v : {Variant::Linear, Variant::Disjoint, Variant::NoAlternation, Variant::TwoLane}) {
            for (RowBound b : {kUnbounded, RowBound{2}, RowBound{3}}) {
                for (auto mode : {SolveMode::Exact, SolveMode::Heuristic}) {
                    auto c = config(v, b, mode);
                    c.timeout_seconds = 2;
                    const auto r1 = run(c, sys);
                    const auto r2 = run(c, sys);
                    CHECK(r1.svg.svg == r2.svg.svg);
                    CHECK(metrics_to_json(r1.metrics, false) == metrics_to_json(r2.metrics, false));
                    if (v != Variant::Linear && b) CHECK(r1.metrics.compression_ratio * *b >= 1.0 - 1e-12);
                }
            }
        }
    }
}

TEST_CASE("timeout zero equals heuristic mode") {
    const auto sys = generate_synthetic({30, 60, 0.4, 11});
    for (auto v : {Variant::Linear, Variant::Disjoint, Variant::NoAlternation, Variant::TwoLane}) {
        auto exact = config(v, 3, SolveMode::Exact);
        exact.timeout_seconds = 0;
        const auto a = run(exact, sys);
        const auto b = run(config(v, 3, SolveMode::Heuristic), sys);
        CHECK(a.svg.svg == b.svg.svg);
        CHECK(a.metrics.status_ord == SolveStatus::TimeoutFallback);
        CHECK(a.metrics.status_comp == SolveStatus::TimeoutFallback);
        CHECK(a.metrics.total_blocks == b.metrics.total_blocks);
        CHECK(a.metrics.row_count == b.metrics.row_count);
    }
}

}

TEST_SUITE("bench") {

TEST_CASE("grid parsing") {
    CHECK(parse_grid("default").size() == 6);
    const auto g = parse_grid("g1:inf,g3:3");
    REQUIRE(g.size() == 2);
    CHECK(g[0].variant == Variant::Disjoint);
    CHECK_FALSE(g[0].bound);
    CHECK(g[1].bound == RowBound{3});
    CHECK_THROWS(parse_grid("g1:1"));
    CHECK_THROWS(parse_grid("g9"));
}

TEST_CASE("quantiles") {
    const auto q = quantiles({4, 1, 3, 2, 5});
    CHECK(q.min == 1);
    CHECK(q.median == 3);
    CHECK(q.q25 == 2);
    CHECK(q.max == 5);
    CHECK(quantiles({1, 2}).median == doctest::Approx(1.5));
    CHECK(quantiles({}).count == 0);
}

TEST_CASE("disjoint corpus compresses to one row") {
    const auto corpus = synthetic_corpus(5, {10, 20, 0.0, 1});
    BenchOptions opts;
    opts.grid = parse_grid("g1:inf");
    opts.timeout_seconds = 30;
    const auto rep = bench(corpus, opts);
    REQUIRE(rep.rows.size() == 10);
    for (const auto& r : rep.rows) {
        REQUIRE(r.metrics);
        CHECK(r.metrics->compression_ratio == doctest::Approx(1.0 / 10.0));
    }
}

TEST_CASE("exact rows never exceed heuristic rows when exact completes") {
    const auto corpus = synthetic_corpus(12, {18, 36, 0.35, 2});
    BenchOptions opts;
    opts.timeout_seconds = 30;
    opts.jobs = 3;
    const auto rep = bench(corpus, opts);
    CHECK(rep.rows.size() == 12 * 6 * 2);
    CHECK(rep.eh.size() == 12 * 6);
    for (const auto& e : rep.eh) {
        if (!e.exact_fallback) {
            CHECK(e.blocks_eh <= 1.0 + 1e-12);
            if (e.cell.variant == Variant::Disjoint) CHECK(e.compression_eh <= 1.0 + 1e-12);
        }
    }
    // Thread count does not change the report.
    opts.jobs = 1;
    const auto serial = bench(corpus, opts);
    auto strip = [](std::string csv) {
        // wall times are the only varying fields; compare the rest
        std::string out;
        std::istringstream in(csv);
        for (std::string line; std::getline(in, line);) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
            cells.resize(15);
            cells[10] = cells[11] = "";
            for (const auto& c : cells) out += c + ",";
            out += "\n";
        }
        return out;
    };
    CHECK(strip(bench_to_csv(rep)) == strip(bench_to_csv(serial)));
    CHECK(eh_to_csv(rep) == eh_to_csv(serial));
    CHECK(summary_table(rep).find("blocks EH-ratio") != std::string::npos);
}

TEST_CASE("corpus loading") {
    const auto dir = std::filesystem::temp_directory_path() / "linzip_corpus_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "b.json") << R"({"sets":{"A":["x"]}})";
    std::ofstream(dir / "a.csv") << "s,x\nA,1\n";
    std::ofstream(dir / "notes.txt") << "ignored";
    const auto corpus = load_corpus(dir);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].name == "a.csv");
    CHECK(corpus[1].name == "b.json");
    std::filesystem::remove_all(dir);
}

}
