// Copyright 2026 The nrhdr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "nrhdr/io.hpp"
#include "nrhdr/pipeline.hpp"
#include "nrhdr/synth.hpp"

using namespace nrhdr;

namespace {

void add_common_options(CLI::App* cmd, PipelineConfig& cfg,
                        std::string& config_path, std::string& layout_name) {
    cmd->add_option("--config", config_path,
                    "pipeline config file ([camera]/[recon]/[display]/[run])");
    cmd->add_option("--seed", cfg.seed, "layout and noise seed");
    cmd->add_option("--layout", layout_name,
                    "sensor layouts to run: regular|nonregular|both");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--threads", cfg.recon.threads,
                    "reconstruction worker count (0 = all cores)");
    cmd->add_flag("--no-noise", [&cfg](std::int64_t) {
        cfg.camera.enable_noise = false;
    }, "disable the camera noise model");
    cmd->add_flag("--spectrum", [&cfg](std::int64_t) {
        cfg.emit.spectrum_png = true;
    }, "also emit the zero-filled sampling spectrum");
}

// --config is applied first, explicit flags override it
void finalize_config(PipelineConfig& cfg, const std::string& config_path,
                     const std::string& layout_name, const CLI::App* cmd) {
    if (!config_path.empty()) {
        PipelineConfig from_file = parse_config_file(config_path);
        // keep command line values for options the user passed explicitly
        if (cmd->count("--seed")) from_file.seed = cfg.seed;
        if (cmd->count("--out")) from_file.out_dir = cfg.out_dir;
        if (cmd->count("--threads")) from_file.recon.threads = cfg.recon.threads;
        if (cmd->count("--no-noise")) from_file.camera.enable_noise = false;
        if (cmd->count("--spectrum")) from_file.emit.spectrum_png = true;
        const LayoutChoice chosen = cfg.layouts;
        cfg = std::move(from_file);
        if (cmd->count("--layout")) cfg.layouts = chosen;
    }
    if (cmd->count("--layout")) {
        cfg.layouts = layout_choice_from_string(layout_name);
    }
    cfg.validate();
}

void print_reports(const std::vector<QualityReport>& reports) {
    for (const auto& r : reports) {
        if (r.error) {
            std::cout << r.image << " [" << r.layout << "]  ERROR: " << r.message
                      << "\n";
            continue;
        }
        std::cout << r.image << " [" << r.layout << "]  PSNR "
                  << (std::isinf(r.psnr_db) ? std::string("inf")
                                            : std::to_string(r.psnr_db))
                  << " dB, PU21-PSNR "
                  << (std::isinf(r.pu21_psnr_db) ? std::string("inf")
                                                 : std::to_string(r.pu21_psnr_db))
                  << " dB  (" << r.wall_time_s << " s)\n";
    }
}

void write_csv_file(const PipelineConfig& cfg,
                    const std::vector<QualityReport>& rows,
                    const std::string& name) {
    if (!cfg.emit.csv) return;
    std::filesystem::create_directories(cfg.out_dir);
    const auto path = cfg.out_dir / (name + ".csv");
    std::ofstream out(path);
    out << to_csv(rows);
    std::cout << "wrote " << path.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Dual-pixel snapshot HDR sensor simulator with sparse Fourier "
        "reconstruction"};
    app.require_subcommand(1);

    PipelineConfig cfg;
    std::string config_path;
    std::string layout_name = "both";

    // zoneplate experiment
    auto* zone_cmd = app.add_subcommand(
        "zoneplate", "simulate acquisition of a synthetic zoneplate");
    ZoneplateSpec zone_spec;
    zone_cmd->add_option("--size", zone_spec.size, "image side length (even)");
    zone_cmd->add_option("--lum-max", zone_spec.lum_max, "peak relative radiance");
    zone_cmd->add_option("--gradient-lo", zone_spec.gradient_lo,
                         "horizontal ramp start");
    zone_cmd->add_option("--gradient-hi", zone_spec.gradient_hi,
                         "horizontal ramp end");
    zone_cmd->add_option("--chirp-rate", zone_spec.chirp_rate,
                         "corner frequency as a fraction of Nyquist");
    add_common_options(zone_cmd, cfg, config_path, layout_name);

    // stripe experiment
    auto* stripe_cmd = app.add_subcommand(
        "stripes", "simulate acquisition of a striped test image");
    int stripe_size = 128;
    int stripe_period = 2;
    std::string stripe_orientation = "vertical";
    double stripe_low = 0.1, stripe_high = 0.3;
    stripe_cmd->add_option("--size", stripe_size, "image side length");
    stripe_cmd->add_option("--period", stripe_period, "stripe period in pixels");
    stripe_cmd->add_option("--orientation", stripe_orientation,
                           "vertical|horizontal");
    stripe_cmd->add_option("--low", stripe_low, "dark stripe radiance");
    stripe_cmd->add_option("--high", stripe_high, "bright stripe radiance");
    add_common_options(stripe_cmd, cfg, config_path, layout_name);

    // single-image pipeline
    auto* sim_cmd = app.add_subcommand("simulate",
                                       "run the pipeline on a grayscale PFM");
    std::string sim_input;
    sim_cmd->add_option("input", sim_input, "input .pfm file")->required();
    add_common_options(sim_cmd, cfg, config_path, layout_name);

    // corpus evaluation
    auto* eval_cmd = app.add_subcommand(
        "evaluate", "evaluate every .pfm in a directory and write a CSV");
    std::string eval_dir;
    eval_cmd->add_option("directory", eval_dir, "directory of .pfm files")
        ->required();
    add_common_options(eval_cmd, cfg, config_path, layout_name);

    // layout inspection
    auto* layout_cmd =
        app.add_subcommand("layout", "generate or inspect sensor layouts");
    int layout_width = 16, layout_height = 16;
    int regular_corner = 1;
    std::string layout_out, layout_in;
    layout_cmd->add_option("--width", layout_width, "HR pixels (even)");
    layout_cmd->add_option("--height", layout_height, "HR pixels (even)");
    layout_cmd->add_option("--kind", layout_name, "regular|nonregular");
    layout_cmd->add_option("--seed", cfg.seed, "PRNG seed (nonregular)");
    layout_cmd->add_option("--corner", regular_corner,
                           "small-pixel corner for regular layouts (0..3)");
    layout_cmd->add_option("--save", layout_out, "write the layout text file");
    layout_cmd->add_option("--inspect", layout_in,
                           "read a layout file and print a summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (zone_cmd->parsed()) {
            finalize_config(cfg, config_path, layout_name, zone_cmd);
            const auto reports =
                run_pipeline(cfg, zoneplate(zone_spec), "zoneplate");
            print_reports(reports);
            write_csv_file(cfg, reports, "zoneplate");
        } else if (stripe_cmd->parsed()) {
            finalize_config(cfg, config_path, layout_name, stripe_cmd);
            const StripeOrientation o = stripe_orientation == "horizontal"
                                            ? StripeOrientation::Horizontal
                                            : StripeOrientation::Vertical;
            cfg.emit.spectrum_png = true;  // the point of this experiment
            const auto reports = run_pipeline(
                cfg, stripes(stripe_size, stripe_period, o, stripe_low, stripe_high),
                "stripes");
            print_reports(reports);
            write_csv_file(cfg, reports, "stripes");
        } else if (sim_cmd->parsed()) {
            finalize_config(cfg, config_path, layout_name, sim_cmd);
            const HdrImage image = read_pfm(sim_input);
            const std::string name =
                std::filesystem::path(sim_input).stem().string();
            const auto reports = run_pipeline(cfg, image, name);
            print_reports(reports);
            write_csv_file(cfg, reports, name);
        } else if (eval_cmd->parsed()) {
            finalize_config(cfg, config_path, layout_name, eval_cmd);
            const auto rows = evaluate_corpus(eval_dir, cfg);
            print_reports(rows);
            write_csv_file(cfg, rows, "corpus");
        } else if (layout_cmd->parsed()) {
            if (!layout_in.empty()) {
                const SensorLayout layout = read_layout_file(layout_in);
                std::cout << "kind: " << to_string(layout.kind) << "\nblocks: "
                          << layout.block_cols << " x " << layout.block_rows
                          << "\nseed: " << layout.seed << "\ncovers: "
                          << layout.width() << " x " << layout.height()
                          << " HR pixels\n";
            } else {
                if (layout_name == "both") layout_name = "nonregular";
                const SensorLayout layout =
                    make_layout(layout_kind_from_string(layout_name),
                                layout_width, layout_height, cfg.seed,
                                regular_corner);
                if (layout_out.empty()) {
                    write_layout(layout, std::cout);
                } else {
                    write_layout_file(layout, layout_out);
                    std::cout << "wrote " << layout_out << "\n";
                }
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
