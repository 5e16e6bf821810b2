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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "nrhdr/recon.hpp"

namespace nrhdr {

namespace {

// Real parameterization of the band-limited DFT dictionary on the region
// grid: one column for each self-conjugate frequency, two (cos/sin) for each
// conjugate pair, |centered ku|,|kv| <= k_limit.
struct BasisEntry {
    int su, sv;  // centered frequency indices
    bool self_conjugate;
};

}  // namespace

ImagePatch oracle_least_squares(const SampledFrame& frame, Rect region,
                                int k_limit, double fallback_weight) {
    const SensorLayout& layout = frame.layout;
    if (region.width <= 0 || region.height <= 0 || region.width > 16 ||
        region.height > 16) {
        throw std::invalid_argument("oracle region must be within 1..16 per side");
    }
    if (region.x0 < 0 || region.y0 < 0 ||
        region.x0 + region.width > layout.width() ||
        region.y0 + region.height > layout.height()) {
        throw std::invalid_argument("oracle region outside the frame");
    }
    if (k_limit < 0 || 2 * k_limit >= std::min(region.width, region.height)) {
        throw std::invalid_argument(
            "k_limit must satisfy 2*k_limit < min(region dims)");
    }

    std::vector<BasisEntry> basis;
    for (int su = -k_limit; su <= k_limit; ++su) {
        for (int sv = -k_limit; sv <= k_limit; ++sv) {
            const bool selfc = (su == 0 && sv == 0);
            if (!selfc && std::pair(-su, -sv) < std::pair(su, sv)) continue;
            basis.push_back({su, sv, selfc});
        }
    }
    int n_params = 0;
    for (const auto& b : basis) n_params += b.self_conjugate ? 1 : 2;

    // constraints fully inside the region
    std::vector<GridConstraint> inside;
    for (const GridConstraint& c : expand_to_grid(frame)) {
        bool ok = true;
        for (int i = 0; i < c.cell_count; ++i) {
            const int x = c.cells[i][0], y = c.cells[i][1];
            if (x < region.x0 || x >= region.x0 + region.width || y < region.y0 ||
                y >= region.y0 + region.height) {
                ok = false;
                break;
            }
        }
        if (ok) inside.push_back(c);
    }
    const int n_rows = int(inside.size());
    if (n_rows < n_params) {
        throw DegenerateSystemError(
            "oracle system is under-determined: " + std::to_string(n_rows) +
                " constraints for " + std::to_string(n_params) + " parameters",
            n_params - n_rows);
    }

    Eigen::MatrixXd A(n_rows, n_params);
    Eigen::VectorXd b(n_rows);
    const double step_u = 2.0 * std::numbers::pi / region.height;
    const double step_v = 2.0 * std::numbers::pi / region.width;
    for (int r = 0; r < n_rows; ++r) {
        const GridConstraint& c = inside[r];
        const double sw =
            std::sqrt(c.fallback ? fallback_weight : 1.0);
        int col = 0;
        for (const auto& e : basis) {
            std::complex<double> psi(0.0);
            for (int i = 0; i < c.cell_count; ++i) {
                const double m = c.cells[i][1] - region.y0;
                const double n = c.cells[i][0] - region.x0;
                const double phase = step_u * e.su * m + step_v * e.sv * n;
                psi += std::complex<double>(std::cos(phase), std::sin(phase));
            }
            if (e.self_conjugate) {
                A(r, col++) = sw * psi.real();
            } else {
                A(r, col++) = sw * 2.0 * psi.real();
                A(r, col++) = sw * -2.0 * psi.imag();
            }
        }
        b(r) = sw * c.value;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-9);
    const int rank = int(qr.rank());
    if (rank < n_params) {
        throw DegenerateSystemError(
            "oracle system is rank deficient by " +
                std::to_string(n_params - rank),
            n_params - rank);
    }
    const Eigen::VectorXd params = qr.solve(b);

    ImagePatch patch;
    patch.rect = region;
    patch.values.resize(std::size_t(region.width) * region.height);
    for (int y = 0; y < region.height; ++y) {
        for (int x = 0; x < region.width; ++x) {
            double v = 0.0;
            int col = 0;
            for (const auto& e : basis) {
                const double phase = step_u * e.su * y + step_v * e.sv * x;
                if (e.self_conjugate) {
                    v += params(col++) * std::cos(phase);
                } else {
                    // coefficient (re, im) against basis pair {k, -k}
                    v += params(col++) * 2.0 * std::cos(phase);
                    v += params(col++) * -2.0 * std::sin(phase);
                }
            }
            patch.values[std::size_t(y) * region.width + x] = v;
        }
    }
    return patch;
}

}  // namespace nrhdr
