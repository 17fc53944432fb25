#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "linzip/column_order.hpp"
#include "linzip/compress.hpp"
#include "linzip/layout.hpp"
#include "linzip/render.hpp"
#include "linzip/set_model.hpp"

namespace linzip {

struct PipelineConfig {
    Variant variant = Variant::Disjoint;
    RowBound bound = kUnbounded;  ///< ignored by the linear style
    SolveMode mode = SolveMode::Exact;
    /// Per-stage budget for the exact solvers.
    double timeout_seconds = 300.0;
    std::uint64_t seed = 0;
    RenderOptions render;
    bool force_coloring_for_b2 = false;
    AuxiliaryColumn auxiliary = AuxiliaryColumn::Zeros;

    /// Throws std::invalid_argument: negative timeout, bound below 2, invalid geometry.
    void validate() const;
};

struct Metrics {
    std::size_t total_blocks = 0;
    std::size_t row_count = 0;
    std::size_t set_count = 0;
    std::size_t element_count = 0;
    std::size_t unique_elements = 0;
    double compression_ratio = 0.0;  ///< row_count / set_count
    double t_ord_ms = 0.0;
    double t_comp_ms = 0.0;
    SolveStatus status_ord = SolveStatus::HeuristicOnly;
    SolveStatus status_comp = SolveStatus::HeuristicOnly;
    /// Some row holds more sets than the palette has colors.
    bool palette_repeats = false;
};

/// Metrics as JSON. Wall times vary from run to run, so they are written as null unless
/// `include_timings` is set.
std::string metrics_to_json(const Metrics& m, bool include_timings);

/// Stage I on its own.
struct ColumnStage {
    ColumnOrder order;
    SolveStatus status = SolveStatus::HeuristicOnly;
    std::size_t unique_columns = 0;
    double elapsed_ms = 0.0;
};

ColumnStage run_column_stage(const PipelineConfig& config, const MembershipMatrix& mat);

/// Stages II and III on a fixed column order; fills every Metrics field except render output.
struct LayoutResult {
    DiagramLayout layout;
    Metrics metrics;
};

LayoutResult run_layout_stages(const PipelineConfig& config, const SetSystem& sys, const MembershipMatrix& mat,
                               const ColumnStage& columns);

struct RunResult {
    DiagramLayout layout;
    SvgDocument svg;
    Metrics metrics;
};

/// All four stages. In exact mode a stage that runs out of time hands its heuristic result
/// to the next stage and is flagged TimeoutFallback.
RunResult run(const PipelineConfig& config, const SetSystem& sys);

}  // namespace linzip
