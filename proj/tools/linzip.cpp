// linzip: compress linear set diagrams from the command line.
//
//   linzip render --input f.json --variant g2 --bound 3 --mode exact --out d.svg --metrics m.json
//   linzip bench  --corpus dir/ --grid default --out report.csv
//   linzip gen    --sets 20 --elements 40 --density 0.3 --seed 1 --out inst.json

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "linzip/bench.hpp"
#include "linzip/instance_io.hpp"
#include "linzip/pipeline.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

linzip::RowBound parse_bound(const std::string& text) {
    if (text == "inf" || text == "none") return linzip::kUnbounded;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || v < 2) throw CLI::ValidationError("--bound", "expected an integer >= 2 or 'inf'");
    return v;
}

// Geometry, palette and label options from a JSON config file; command-line flags win.
void apply_config_file(const std::string& path, linzip::RenderOptions& render) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    const auto j = nlohmann::json::parse(in);
    auto& g = render.geometry;
    const auto geo = j.value("geometry", nlohmann::json::object());
    g.column_width = geo.value("column_width", g.column_width);
    g.row_height = geo.value("row_height", g.row_height);
    g.block_margin = geo.value("block_margin", g.block_margin);
    g.row_margin = geo.value("row_margin", g.row_margin);
    g.link_thickness = geo.value("link_thickness", g.link_thickness);
    g.label_font_size = geo.value("label_font_size", g.label_font_size);
    if (geo.contains("canvas_width")) g.canvas_width = geo["canvas_width"].get<double>();
    if (j.contains("palette")) render.palette = j["palette"].get<std::vector<std::string>>();
    render.intersection_labels = j.value("intersection_labels", render.intersection_labels);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linzip: compressed linear diagrams for set systems"};
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "Order, compress, color and draw one instance");
    std::string input, format, variant = "g1", bound = "inf", mode = "exact", out_svg, metrics_path, meta_path,
                config_path, palette;
    double timeout = 300.0;
    std::uint64_t seed = 0;
    bool timings = false, intersection = false, force_coloring = false, ones_aux = false;
    std::optional<double> column_width, row_height, block_margin, row_margin, link_thickness, font_size, canvas;
    render_cmd->add_option("--input,-i", input, "Instance file (.json or .csv)")->required()->check(CLI::ExistingFile);
    render_cmd->add_option("--format", format, "Input format, overrides the extension")
        ->check(CLI::IsMember({"json", "csv"}));
    render_cmd->add_option("--variant", variant, "g0 linear, g1 disjoint, g2 no alternation, g3 two lanes")
        ->check(CLI::IsMember({"g0", "g1", "g2", "g3"}));
    render_cmd->add_option("--bound", bound, "Max sets per row (>= 2) or 'inf'");
    render_cmd->add_option("--mode", mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    render_cmd->add_option("--timeout", timeout, "Per-stage budget of the exact solvers in seconds")
        ->check(CLI::NonNegativeNumber);
    render_cmd->add_option("--seed", seed, "Seed for every random choice");
    render_cmd->add_option("--out,-o", out_svg, "SVG output path")->required();
    render_cmd->add_option("--metrics", metrics_path, "Metrics JSON output path");
    render_cmd->add_option("--meta", meta_path, "Render metadata JSON output path");
    render_cmd->add_option("--config", config_path, "JSON file with geometry/palette settings")
        ->check(CLI::ExistingFile);
    render_cmd->add_option("--palette", palette, "Comma-separated colors");
    render_cmd->add_option("--column-width", column_width);
    render_cmd->add_option("--row-height", row_height);
    render_cmd->add_option("--block-margin", block_margin);
    render_cmd->add_option("--row-margin", row_margin);
    render_cmd->add_option("--link-thickness", link_thickness);
    render_cmd->add_option("--font-size", font_size);
    render_cmd->add_option("--canvas-width", canvas);
    render_cmd->add_flag("--intersection-labels", intersection, "Label column runs with their size");
    render_cmd->add_flag("--timings", timings, "Write stage wall times into the metrics file");
    render_cmd->add_flag("--force-coloring-b2", force_coloring, "Use coloring instead of matching for bound 2");
    render_cmd->add_flag("--ones-auxiliary", ones_aux, "Close column tours with an all-ones column");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Exact vs heuristic pipelines over a corpus");
    std::string corpus, grid = "default", report_path;
    std::size_t gen_count = 0, jobs = 1;
    linzip::SyntheticParams gen_params;
    double bench_timeout = 300.0;
    std::uint64_t bench_seed = 0;
    auto* corpus_opt = bench_cmd->add_option("--corpus", corpus, "Directory of instance files")
                           ->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--generate", gen_count, "Use this many synthetic instances instead of a corpus")
        ->excludes(corpus_opt);
    bench_cmd->add_option("--sets", gen_params.sets, "Synthetic: sets per instance");
    bench_cmd->add_option("--elements", gen_params.elements, "Synthetic: element pool size");
    bench_cmd->add_option("--density", gen_params.density, "Synthetic: reuse probability")
        ->check(CLI::Range(0.0, 1.0));
    bench_cmd->add_option("--gen-seed", gen_params.seed, "Synthetic: corpus seed");
    bench_cmd->add_option("--grid", grid, "'default' or e.g. g1:inf,g3:3");
    bench_cmd->add_option("--timeout", bench_timeout, "Per-stage exact budget in seconds")
        ->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--seed", bench_seed, "Pipeline seed");
    bench_cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out,-o", report_path, "Report CSV; EH-ratios go to <stem>.eh.csv")->required();

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic instance");
    linzip::SyntheticParams one;
    std::string gen_out;
    gen_cmd->add_option("--sets", one.sets)->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--elements", one.elements)->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--density", one.density)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_option("--seed", one.seed);
    gen_cmd->add_option("--out,-o", gen_out, "Output JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*render_cmd) {
            linzip::PipelineConfig cfg;
            cfg.variant = linzip::parse_variant(variant);
            cfg.bound = parse_bound(bound);
            cfg.mode = mode == "exact" ? linzip::SolveMode::Exact : linzip::SolveMode::Heuristic;
            cfg.timeout_seconds = timeout;
            cfg.seed = seed;
            cfg.force_coloring_for_b2 = force_coloring;
            cfg.auxiliary = ones_aux ? linzip::AuxiliaryColumn::Ones : linzip::AuxiliaryColumn::Zeros;
            if (!config_path.empty()) apply_config_file(config_path, cfg.render);
            auto& g = cfg.render.geometry;
            if (column_width) g.column_width = *column_width;
            if (row_height) g.row_height = *row_height;
            if (block_margin) g.block_margin = *block_margin;
            if (row_margin) g.row_margin = *row_margin;
            if (link_thickness) g.link_thickness = *link_thickness;
            if (font_size) g.label_font_size = *font_size;
            if (canvas) g.canvas_width = *canvas;
            if (intersection) cfg.render.intersection_labels = true;
            if (!palette.empty()) {
                cfg.render.palette.clear();
                std::stringstream ss(palette);
                for (std::string c; std::getline(ss, c, ',');) {
                    if (!c.empty()) cfg.render.palette.push_back(c);
                }
            }

            std::optional<linzip::InstanceFormat> fmt;
            if (format == "json") fmt = linzip::InstanceFormat::Json;
            if (format == "csv") fmt = linzip::InstanceFormat::Csv;
            const auto sys = linzip::parse_instance(input, fmt);
            for (const auto& w : sys.warnings()) std::cerr << "warning: " << w << '\n';

            const auto result = linzip::run(cfg, sys);
            write_file(out_svg, result.svg.svg);
            if (!metrics_path.empty()) write_file(metrics_path, linzip::metrics_to_json(result.metrics, timings));
            if (!meta_path.empty()) write_file(meta_path, linzip::metadata_to_json(result.svg.meta));
            if (result.metrics.palette_repeats) {
                std::cerr << "warning: a row holds more sets than the palette has colors\n";
            }
            return 0;
        }

        if (*bench_cmd) {
            std::vector<linzip::BenchInstance> instances;
            if (!corpus.empty()) {
                instances = linzip::load_corpus(corpus);
            } else if (gen_count > 0) {
                instances = linzip::synthetic_corpus(gen_count, gen_params);
            } else {
                std::cerr << "bench: give --corpus or --generate\n";
                return 2;
            }
            linzip::BenchOptions opts;
            opts.grid = linzip::parse_grid(grid);
            opts.timeout_seconds = bench_timeout;
            opts.seed = bench_seed;
            opts.jobs = jobs;
            const auto report = linzip::bench(instances, opts);
            write_file(report_path, linzip::bench_to_csv(report));
            std::filesystem::path eh_path(report_path);
            eh_path.replace_extension(".eh.csv");
            write_file(eh_path.string(), linzip::eh_to_csv(report));
            std::cout << linzip::summary_table(report);
            return 0;
        }

        if (*gen_cmd) {
            write_file(gen_out, linzip::instance_to_json(linzip::generate_synthetic(one)));
            return 0;
        }
    } catch (const linzip::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
