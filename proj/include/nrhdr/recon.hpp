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

#include <complex>
#include <stdexcept>
#include <vector>

#include "nrhdr/image.hpp"
#include "nrhdr/sensor.hpp"

namespace nrhdr {

/// Block geometry and greedy-pursuit parameters for the sparse Fourier
/// reconstruction.
struct ReconstructionConfig {
    int model_block = 4;   // side length B of the emitted model block
    int border = 14;       // context width around the block
    int fft_size = 32;     // transform size T, >= B + 2*border, power of two
    int max_iterations = 200;
    double gamma = 0.5;    // orthogonality-deficiency compensation, (0,1]
    double rho = 0.7;      // isotropic spatial weighting decay, (0,1)
    double min_residual_gain = 1e-6;  // early stop on relative energy decrease
    double fallback_weight = 0.25;    // weight multiplier for Kept* readings
    bool use_reconstructed_context = false;  // feed earlier blocks' output forward
    int threads = 1;       // worker count; 0 = hardware concurrency

    void validate() const;
    /// fft_size if already valid, otherwise B + 2*border rounded up to the
    /// next power of two.
    int effective_fft_size() const;
};

/// Sparse Fourier model of one block: selected DFT frequencies and their
/// expansion coefficients on the T x T support frame. Conjugate partners of
/// the stored entries are implied, so the synthesized frame is real.
struct BlockModel {
    struct Term {
        int ku = 0;  // row (y) frequency index in [0, T)
        int kv = 0;  // column (x) frequency index in [0, T)
        std::complex<double> coeff;
        bool self_conjugate = false;
    };
    int fft_size = 0;
    std::vector<Term> terms;
    std::vector<double> residual_trace;  // weighted residual energy, entry 0 = initial

    /// Evaluate g on the full T x T frame (row-major).
    std::vector<double> synthesize() const;
};

/// Reconstruct the full HR image from the sparse, partially binned
/// observations by per-block greedy Fourier pursuit. Blocks are independent
/// (unless use_reconstructed_context is set) and processed in raster order;
/// negative model outputs are floored to 0. If `models_out` is non-null it
/// receives one BlockModel per model block, raster order.
HdrImage reconstruct(const SampledFrame& frame, const ReconstructionConfig& cfg,
                     std::vector<BlockModel>* models_out = nullptr);

struct Rect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
};

struct ImagePatch {
    Rect rect;
    std::vector<double> values;  // row-major, rect.width * rect.height

    double at(int x, int y) const {  // x,y relative to rect origin
        return values[std::size_t(y) * rect.width + x];
    }
};

class DegenerateSystemError : public std::runtime_error {
public:
    DegenerateSystemError(const std::string& what, int deficiency)
        : std::runtime_error(what), deficiency(deficiency) {}
    int deficiency;
};

/// Dense weighted least-squares verification oracle: fit all DFT basis
/// functions of the region grid with centered frequency indices
/// |ku|,|kv| <= k_limit to the constraints inside `region` by a direct
/// solve. Independent of the greedy path; small regions only (<= 16x16).
/// Throws DegenerateSystemError when the normal system is rank deficient.
ImagePatch oracle_least_squares(const SampledFrame& frame, Rect region,
                                int k_limit, double fallback_weight = 0.25);

}  // namespace nrhdr
