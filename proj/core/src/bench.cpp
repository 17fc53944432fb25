#include "linzip/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "linzip/random.hpp"

namespace linzip {

namespace {

std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string bound_text(RowBound b) { return b ? std::to_string(*b) : "inf"; }

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

bool fell_back(const Metrics& m) {
    return m.status_ord == SolveStatus::TimeoutFallback || m.status_comp == SolveStatus::TimeoutFallback;
}

struct InstanceOutcome {
    std::vector<BenchRow> rows;
    std::vector<EhRow> eh;
};

InstanceOutcome bench_instance(const BenchInstance& inst, const BenchOptions& options) {
    InstanceOutcome out;
    const MembershipMatrix mat = build_membership_matrix(inst.sys);
    std::vector<std::optional<Metrics>> exact(options.grid.size()), heuristic(options.grid.size());
    for (SolveMode mode : {SolveMode::Exact, SolveMode::Heuristic}) {
        PipelineConfig cfg;
        cfg.mode = mode;
        cfg.timeout_seconds = options.timeout_seconds;
        cfg.seed = options.seed;
        std::optional<ColumnStage> columns;
        std::string column_error;
        try {
            columns = run_column_stage(cfg, mat);
        } catch (const std::exception& e) {
            column_error = e.what();
        }
        for (std::size_t k = 0; k < options.grid.size(); ++k) {
            BenchRow row;
            row.instance = inst.name;
            row.cell = options.grid[k];
            row.mode = mode;
            if (!columns) {
                row.error = column_error;
            } else {
                try {
                    PipelineConfig c = cfg;
                    c.variant = row.cell.variant;
                    c.bound = row.cell.bound;
                    row.metrics = run_layout_stages(c, inst.sys, mat, *columns).metrics;
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
            (mode == SolveMode::Exact ? exact : heuristic)[k] = row.metrics;
            out.rows.push_back(std::move(row));
        }
    }
    // Exact rows first, then heuristic; interleave per cell for readability.
    std::vector<BenchRow> ordered;
    const std::size_t g = options.grid.size();
    for (std::size_t k = 0; k < g; ++k) {
        ordered.push_back(std::move(out.rows[k]));
        ordered.push_back(std::move(out.rows[g + k]));
    }
    out.rows = std::move(ordered);

    for (std::size_t k = 0; k < g; ++k) {
        if (!exact[k] || !heuristic[k]) continue;
        EhRow eh;
        eh.instance = inst.name;
        eh.cell = options.grid[k];
        eh.blocks_eh = static_cast<double>(exact[k]->total_blocks) / static_cast<double>(heuristic[k]->total_blocks);
        eh.compression_eh = exact[k]->compression_ratio / heuristic[k]->compression_ratio;
        eh.exact_fallback = fell_back(*exact[k]);
        out.eh.push_back(eh);
    }
    return out;
}

}  // namespace

std::vector<BenchCell> parse_grid(std::string_view text) {
    if (text == "default") {
        std::vector<BenchCell> out;
        for (auto v : {Variant::Disjoint, Variant::NoAlternation, Variant::TwoLane}) {
            out.push_back({v, kUnbounded});
            out.push_back({v, 3});
        }
        return out;
    }
    std::vector<BenchCell> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
        if (item.empty()) continue;
        const std::size_t colon = item.find(':');
        BenchCell cell;
        cell.variant = parse_variant(item.substr(0, colon));
        if (colon != std::string_view::npos) {
            const std::string b(item.substr(colon + 1));
            if (b != "inf") {
                std::size_t used = 0;
                unsigned long v = 0;
                try {
                    v = std::stoul(b, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used != b.size() || v < 2) throw std::invalid_argument("bad bound '" + b + "' in grid");
                cell.bound = v;
            }
        }
        out.push_back(cell);
    }
    if (out.empty()) throw std::invalid_argument("empty grid");
    return out;
}

std::vector<BenchInstance> load_corpus(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".csv")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<BenchInstance> out;
    for (const auto& f : files) out.push_back({f.filename().string(), parse_instance(f)});
    return out;
}

std::vector<BenchInstance> synthetic_corpus(std::size_t count, const SyntheticParams& base) {
    std::vector<BenchInstance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        SyntheticParams p = base;
        p.seed = derive_seed(base.seed, "instance-" + std::to_string(i));
        char name[32];
        std::snprintf(name, sizeof name, "syn%03zu", i);
        out.push_back({name, generate_synthetic(p)});
    }
    return out;
}

EhReport bench(const std::vector<BenchInstance>& instances, const BenchOptions& options) {
    std::vector<InstanceOutcome> outcomes(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) outcomes[i] = bench_instance(instances[i], options);
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, instances.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    EhReport report;
    for (auto& o : outcomes) {
        std::move(o.rows.begin(), o.rows.end(), std::back_inserter(report.rows));
        std::move(o.eh.begin(), o.eh.end(), std::back_inserter(report.eh));
    }
    return report;
}

std::string bench_to_csv(const EhReport& report) {
    std::ostringstream out;
    out << "instance,variant,bound,mode,sets,elements,unique_elements,total_blocks,row_count,compression_ratio,"
           "t_ord_ms,t_comp_ms,status_ord,status_comp,error\n";
    for (const auto& r : report.rows) {
        out << csv_field(r.instance) << ',' << to_string(r.cell.variant) << ',' << bound_text(r.cell.bound) << ','
            << (r.mode == SolveMode::Exact ? "exact" : "heuristic") << ',';
        if (r.metrics) {
            const auto& m = *r.metrics;
            out << m.set_count << ',' << m.element_count << ',' << m.unique_elements << ',' << m.total_blocks << ','
                << m.row_count << ',' << fixed(m.compression_ratio) << ',' << fixed(m.t_ord_ms, 3) << ','
                << fixed(m.t_comp_ms, 3) << ',' << to_string(m.status_ord) << ',' << to_string(m.status_comp) << ',';
        } else {
            out << ",,,,,,,,,,";
        }
        out << csv_field(r.error) << '\n';
    }
    return out.str();
}

std::string eh_to_csv(const EhReport& report) {
    std::ostringstream out;
    out << "instance,variant,bound,blocks_eh,compression_eh,exact_fallback\n";
    for (const auto& e : report.eh) {
        out << csv_field(e.instance) << ',' << to_string(e.cell.variant) << ',' << bound_text(e.cell.bound) << ','
            << fixed(e.blocks_eh) << ',' << fixed(e.compression_eh) << ',' << (e.exact_fallback ? 1 : 0) << '\n';
    }
    return out.str();
}

Quantiles quantiles(std::vector<double> v) {
    Quantiles q;
    q.count = v.size();
    if (v.empty()) return q;
    std::sort(v.begin(), v.end());
    auto at = [&](double p) {
        const double idx = p * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(idx));
        const auto hi = static_cast<std::size_t>(std::ceil(idx));
        return v[lo] + (v[hi] - v[lo]) * (idx - static_cast<double>(lo));
    };
    q.min = v.front();
    q.q25 = at(0.25);
    q.median = at(0.5);
    q.q75 = at(0.75);
    q.max = v.back();
    return q;
}

std::string summary_table(const EhReport& report) {
    std::ostringstream out;
    char line[256];
    auto row = [&](const std::string& label, const Quantiles& q) {
        std::snprintf(line, sizeof line, "%-28s %5zu %8.4f %8.4f %8.4f %8.4f %8.4f\n", label.c_str(), q.count, q.min,
                      q.q25, q.median, q.q75, q.max);
        out << line;
    };
    std::snprintf(line, sizeof line, "%-28s %5s %8s %8s %8s %8s %8s\n", "metric", "n", "min", "q25", "median", "q75",
                  "max");
    out << line;

    // Column order does not depend on the variant: one blocks ratio per instance.
    std::vector<double> blocks;
    std::string last;
    for (const auto& e : report.eh) {
        if (e.instance != last) blocks.push_back(e.blocks_eh);
        last = e.instance;
    }
    row("blocks EH-ratio", quantiles(blocks));

    std::vector<BenchCell> cells;
    for (const auto& r : report.rows) {
        const bool known = std::any_of(cells.begin(), cells.end(), [&](const BenchCell& c) {
            return c.variant == r.cell.variant && c.bound == r.cell.bound;
        });
        if (!known) cells.push_back(r.cell);
    }
    for (const auto& c : cells) {
        const std::string tag = std::string(to_string(c.variant)) + " B=" + bound_text(c.bound);
        for (SolveMode mode : {SolveMode::Exact, SolveMode::Heuristic}) {
            std::vector<double> ratios;
            for (const auto& r : report.rows) {
                if (r.metrics && r.mode == mode && r.cell.variant == c.variant && r.cell.bound == c.bound) {
                    ratios.push_back(r.metrics->compression_ratio);
                }
            }
            row("ratio " + tag + (mode == SolveMode::Exact ? " exact" : " heur"), quantiles(ratios));
        }
        std::vector<double> ehs;
        for (const auto& e : report.eh) {
            if (e.cell.variant == c.variant && e.cell.bound == c.bound) ehs.push_back(e.compression_eh);
        }
        row("ratio EH " + tag, quantiles(ehs));
    }
    std::size_t failures = 0, fallbacks = 0;
    for (const auto& r : report.rows) failures += r.error.empty() ? 0 : 1;
    for (const auto& e : report.eh) fallbacks += e.exact_fallback ? 1 : 0;
    out << "failed cells: " << failures << ", exact cells with timeout fallback: " << fallbacks << '\n';
    return out.str();
}

}  // namespace linzip
