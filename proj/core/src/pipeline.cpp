#include "linzip/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "json.hpp"
#include "linzip/random.hpp"

namespace linzip {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

void PipelineConfig::validate() const {
    if (!(timeout_seconds >= 0.0) || std::isnan(timeout_seconds)) throw std::invalid_argument("timeout must be >= 0");
    if (variant != Variant::Linear && bound && *bound < 2) throw std::invalid_argument("bound must be at least 2");
    render.geometry.validate();
    if (render.palette.empty()) throw std::invalid_argument("palette is empty");
}

std::string metrics_to_json(const Metrics& m, bool include_timings) {
    nlohmann::ordered_json j;
    j["total_blocks"] = m.total_blocks;
    j["row_count"] = m.row_count;
    j["set_count"] = m.set_count;
    j["element_count"] = m.element_count;
    j["unique_elements"] = m.unique_elements;
    j["compression_ratio"] = m.compression_ratio;
    j["t_ord_ms"] = include_timings ? nlohmann::ordered_json(m.t_ord_ms) : nlohmann::ordered_json(nullptr);
    j["t_comp_ms"] = include_timings ? nlohmann::ordered_json(m.t_comp_ms) : nlohmann::ordered_json(nullptr);
    j["status_ord"] = std::string(to_string(m.status_ord));
    j["status_comp"] = std::string(to_string(m.status_comp));
    j["palette_repeats"] = m.palette_repeats;
    return j.dump(2) + "\n";
}

ColumnStage run_column_stage(const PipelineConfig& config, const MembershipMatrix& mat) {
    const auto t0 = std::chrono::steady_clock::now();
    const TspInstance inst = build_tsp_instance(mat, config.auxiliary);
    const std::uint64_t seed = derive_seed(config.seed, "column-order");
    TourResult tour = config.mode == SolveMode::Exact
                          ? solve_tour_exact(inst, std::chrono::duration<double>(config.timeout_seconds), seed)
                          : solve_tour_heuristic(inst, seed);
    ColumnStage out;
    out.order = std::move(tour.order);
    out.status = tour.status;
    out.unique_columns = inst.aux_index;
    out.elapsed_ms = ms_since(t0);
    return out;
}

LayoutResult run_layout_stages(const PipelineConfig& config, const SetSystem& sys, const MembershipMatrix& mat,
                               const ColumnStage& columns) {
    LayoutResult res;
    auto& layout = res.layout;
    layout.style = config.variant;
    layout.column_order = columns.order;

    const auto t0 = std::chrono::steady_clock::now();
    if (config.variant == Variant::Linear) {
        layout.rows.row_of.resize(sys.set_count());
        std::iota(layout.rows.row_of.begin(), layout.rows.row_of.end(), std::size_t{0});
        layout.rows.row_count = sys.set_count();
        layout.rows.bound = kUnbounded;
        if (config.mode == SolveMode::Heuristic) {
            layout.rows.status = SolveStatus::HeuristicOnly;
        } else {
            layout.rows.status = config.timeout_seconds > 0.0 ? SolveStatus::Optimal : SolveStatus::TimeoutFallback;
        }
    } else {
        const ConflictModel model = build_conflict_graph(mat, config.variant, layout.column_order);
        RowSolveOptions opts;
        opts.bound = config.bound;
        opts.mode = config.mode;
        opts.timeout = std::chrono::duration<double>(config.timeout_seconds);
        opts.force_coloring_for_b2 = config.force_coloring_for_b2;
        layout.rows = solve_rows(model, opts);
    }
    const double t_comp = ms_since(t0);

    layout.row_order = order_rows(layout.rows, derive_seed(config.seed, "row-order"));
    const auto ranges = active_ranges(mat, layout.column_order);
    const auto colors = assign_colors_circular(layout, ranges, config.render.palette.size());
    layout.color_of = colors.color_of;

    auto& m = res.metrics;
    m.total_blocks = count_blocks(mat, layout.column_order).total;
    m.row_count = layout.rows.row_count;
    m.set_count = sys.set_count();
    m.element_count = sys.element_count();
    m.unique_elements = columns.unique_columns;
    m.compression_ratio = m.set_count ? static_cast<double>(m.row_count) / static_cast<double>(m.set_count) : 0.0;
    m.t_ord_ms = columns.elapsed_ms;
    m.t_comp_ms = t_comp;
    m.status_ord = columns.status;
    m.status_comp = layout.rows.status;
    m.palette_repeats = colors.repeats_within_row;
    return res;
}

RunResult run(const PipelineConfig& config, const SetSystem& sys) {
    config.validate();
    const MembershipMatrix mat = build_membership_matrix(sys);
    const ColumnStage columns = run_column_stage(config, mat);
    LayoutResult lr = run_layout_stages(config, sys, mat, columns);
    RunResult out;
    out.svg = render(lr.layout, sys, config.render);
    out.layout = std::move(lr.layout);
    out.metrics = lr.metrics;
    return out;
}

}  // namespace linzip
