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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "nrhdr/metrics.hpp"
#include "nrhdr/recon.hpp"
#include "nrhdr/sensor.hpp"

namespace nrhdr {

enum class LayoutChoice { Regular, NonRegular, Both };

struct EmitFlags {
    bool recon_pfm = true;
    bool tonemap_png = true;
    bool clipmask_png = true;
    bool spectrum_png = false;
    bool csv = true;

    bool any() const {
        return recon_pfm || tonemap_png || clipmask_png || spectrum_png || csv;
    }
};

/// Everything a pipeline run needs besides the input image itself.
struct PipelineConfig {
    CameraModel camera;
    ReconstructionConfig recon;
    DisplayModel display;
    Pu21Coeffs pu21;  // empty variant = use the built-in banding_glare set

    std::uint64_t seed = 0;          // layout and noise seed
    LayoutChoice layouts = LayoutChoice::Both;
    int regular_corner = 1;
    std::filesystem::path out_dir = "out";
    EmitFlags emit;

    void validate() const;
    const Pu21Coeffs& pu21_coeffs() const;
};

/// Overlay settings from a [camera]/[recon]/[display]/[run] key-value file
/// onto `cfg`. Unknown sections or keys are errors.
void apply_config_text(PipelineConfig& cfg, std::string_view text,
                       const std::string& source_name = "<config>");

PipelineConfig parse_config_file(const std::filesystem::path& path);

LayoutChoice layout_choice_from_string(const std::string& name);

}  // namespace nrhdr
