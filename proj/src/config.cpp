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

#include "nrhdr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nrhdr {

void PipelineConfig::validate() const {
    camera.validate();
    recon.validate();
    display.validate();
    if (regular_corner < 0 || regular_corner > 3) {
        throw std::invalid_argument("regular_corner must be in 0..3");
    }
    if (!emit.any()) {
        throw std::invalid_argument("at least one emit flag must be set");
    }
}

const Pu21Coeffs& PipelineConfig::pu21_coeffs() const {
    return pu21.variant.empty() ? pu21_banding_glare() : pu21;
}

LayoutChoice layout_choice_from_string(const std::string& name) {
    if (name == "regular") return LayoutChoice::Regular;
    if (name == "nonregular") return LayoutChoice::NonRegular;
    if (name == "both") return LayoutChoice::Both;
    throw std::invalid_argument("unknown layout choice '" + name +
                                "' (expected regular|nonregular|both)");
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "on" || value == "1") return true;
    if (value == "false" || value == "off" || value == "0") return false;
    throw std::invalid_argument("boolean expected for '" + key + "', got '" +
                                value + "'");
}

}  // namespace

void apply_config_text(PipelineConfig& cfg, std::string_view text,
                       const std::string& source_name) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::string section;
    int line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument(source_name + ":" + std::to_string(line_no) +
                                    ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "camera" && section != "recon" &&
                section != "display" && section != "run") {
                fail("unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail("expected key = value");
        if (section.empty()) fail("key '" + key + "' outside any section");

        try {
            if (section == "camera") {
                if (key == "sat_rel") cfg.camera.sat_rel = std::stod(value);
                else if (key == "noise_floor_rel") cfg.camera.noise_floor_rel = std::stod(value);
                else if (key == "photon_scale") cfg.camera.photon_scale = std::stod(value);
                else if (key == "read_sigma_rel") cfg.camera.read_sigma_rel = std::stod(value);
                else if (key == "enable_noise") cfg.camera.enable_noise = parse_bool(value, key);
                else fail("unknown camera key '" + key + "'");
            } else if (section == "recon") {
                if (key == "model_block") cfg.recon.model_block = std::stoi(value);
                else if (key == "border") cfg.recon.border = std::stoi(value);
                else if (key == "fft_size") cfg.recon.fft_size = std::stoi(value);
                else if (key == "max_iterations") cfg.recon.max_iterations = std::stoi(value);
                else if (key == "gamma") cfg.recon.gamma = std::stod(value);
                else if (key == "rho") cfg.recon.rho = std::stod(value);
                else if (key == "min_residual_gain") cfg.recon.min_residual_gain = std::stod(value);
                else if (key == "fallback_weight") cfg.recon.fallback_weight = std::stod(value);
                else if (key == "use_reconstructed_context") cfg.recon.use_reconstructed_context = parse_bool(value, key);
                else if (key == "threads") cfg.recon.threads = std::stoi(value);
                else fail("unknown recon key '" + key + "'");
            } else if (section == "display") {
                if (key == "peak_cd_m2") cfg.display.peak_cd_m2 = std::stod(value);
                else if (key == "black_cd_m2") cfg.display.black_cd_m2 = std::stod(value);
                else fail("unknown display key '" + key + "'");
            } else {  // run
                if (key == "seed") cfg.seed = std::stoull(value);
                else if (key == "layout") cfg.layouts = layout_choice_from_string(value);
                else if (key == "regular_corner") cfg.regular_corner = std::stoi(value);
                else if (key == "out_dir") cfg.out_dir = value;
                else if (key == "emit_recon_pfm") cfg.emit.recon_pfm = parse_bool(value, key);
                else if (key == "emit_tonemap_png") cfg.emit.tonemap_png = parse_bool(value, key);
                else if (key == "emit_clipmask_png") cfg.emit.clipmask_png = parse_bool(value, key);
                else if (key == "emit_spectrum_png") cfg.emit.spectrum_png = parse_bool(value, key);
                else if (key == "emit_csv") cfg.emit.csv = parse_bool(value, key);
                else if (key == "pu21_coeffs") cfg.pu21 = load_pu21_coeffs(value);
                else fail("unknown run key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            // std::stod/stoi throw invalid_argument without context
            const std::string what = e.what();
            if (what.find(source_name) == 0) throw;
            fail("bad value for '" + key + "': " + what);
        }
    }
}

PipelineConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    PipelineConfig cfg;
    apply_config_text(cfg, text.str(), path.string());
    return cfg;
}

}  // namespace nrhdr
