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

#include <string>
#include <vector>

#include "nrhdr/config.hpp"
#include "nrhdr/image.hpp"

namespace nrhdr {

/// One evaluated (image, layout) pair. psnr_db / pu21_psnr_db may be
/// +infinity (identical images); `error` rows carry a message instead of
/// numbers.
struct QualityReport {
    std::string image;
    std::string layout;
    double psnr_db = 0.0;
    double pu21_psnr_db = 0.0;
    double norm_scale = 1.0;   // reference normalization divisor
    double wall_time_s = 0.0;
    bool error = false;
    std::string message;
};

/// acquire -> camera -> classify -> reconstruct -> evaluate, for each
/// requested layout kind. Emits the artifacts selected by cfg.emit into
/// cfg.out_dir, using `name` as the file stem.
std::vector<QualityReport> run_pipeline(const PipelineConfig& cfg,
                                        const HdrImage& reference,
                                        const std::string& name);

/// Evaluate every *.pfm in `dir` (lexicographic order), each normalized by
/// its own 99.9th percentile. Appends one mean row per layout. Unreadable
/// files become error rows; an empty directory is an error.
std::vector<QualityReport> evaluate_corpus(const std::filesystem::path& dir,
                                           const PipelineConfig& cfg);

/// CSV with header row; infinities serialize as "inf".
std::string to_csv(const std::vector<QualityReport>& rows);

}  // namespace nrhdr
