#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linzip/instance_io.hpp"
#include "linzip/pipeline.hpp"

namespace linzip {

/// One compression variant of the experiment grid.
struct BenchCell {
    Variant variant = Variant::Disjoint;
    RowBound bound = kUnbounded;
};

/// "default" is {g1, g2, g3} x {unbounded, 3}. Otherwise a comma list of variant:bound,
/// e.g. "g1:inf,g3:3".
std::vector<BenchCell> parse_grid(std::string_view text);

struct BenchInstance {
    std::string name;
    SetSystem sys;
};

/// Every *.json and *.csv file of a directory, sorted by file name.
std::vector<BenchInstance> load_corpus(const std::filesystem::path& dir);

/// `count` synthetic instances; instance i uses seed derive_seed(base.seed, "instance-i").
std::vector<BenchInstance> synthetic_corpus(std::size_t count, const SyntheticParams& base);

struct BenchOptions {
    std::vector<BenchCell> grid = parse_grid("default");
    double timeout_seconds = 300.0;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
};

struct BenchRow {
    std::string instance;
    BenchCell cell;
    SolveMode mode = SolveMode::Exact;
    std::optional<Metrics> metrics;
    std::string error;  ///< nonempty when this cell failed
};

/// Exact value divided by heuristic value, per instance and compression variant.
struct EhRow {
    std::string instance;
    BenchCell cell;
    double blocks_eh = 0.0;
    double compression_eh = 0.0;
    /// Some exact stage fell back to the heuristic, so ratios above 1 are possible.
    bool exact_fallback = false;
};

struct EhReport {
    std::vector<BenchRow> rows;
    std::vector<EhRow> eh;
};

/// Runs the exact and heuristic pipelines (stages I-III) for every instance and grid cell.
/// Failures are recorded per row and the run continues. Instances run on `jobs` threads;
/// row order is independent of scheduling.
EhReport bench(const std::vector<BenchInstance>& instances, const BenchOptions& options);

std::string bench_to_csv(const EhReport& report);
std::string eh_to_csv(const EhReport& report);

struct Quantiles {
    std::size_t count = 0;
    double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

/// Linear-interpolation quantiles; all zero for an empty sample.
Quantiles quantiles(std::vector<double> values);

/// Aligned text table: blocks EH-ratio, then per cell the compression ratio quantiles of
/// both modes and the compression EH-ratio quantiles.
std::string summary_table(const EhReport& report);

}  // namespace linzip
