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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nrhdr/io.hpp"
#include "nrhdr/metrics.hpp"
#include "nrhdr/pipeline.hpp"
#include "nrhdr/recon.hpp"
#include "nrhdr/sensor.hpp"
#include "nrhdr/synth.hpp"

using namespace nrhdr;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

CameraModel noiseless_camera() {
    CameraModel cam;
    cam.enable_noise = false;
    return cam;
}

SampledFrame frame_of(const HdrImage& img, const SensorLayout& layout,
                      const CameraModel& cam, std::uint64_t seed = 0) {
    return classify(apply_camera(sample(img, layout), cam, seed), layout, cam);
}

double rms_diff(const HdrImage& a, const HdrImage& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixel_count(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        acc += d * d;
    }
    return std::sqrt(acc / double(a.pixel_count()));
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

// --- criterion 1: zoneplate anti-aliasing gap ------------------------------

Check criterion_zoneplate_gap() {
    Check check;
    const auto started = std::chrono::steady_clock::now();
    ZoneplateSpec spec;  // 512x512, full-Nyquist chirp, 0.01..1 gradient
    const HdrImage reference = zoneplate(spec);
    CameraModel cam;  // defaults, noise on
    ReconstructionConfig rc;  // defaults, single-threaded
    double psnr_db[2] = {0.0, 0.0};
    int i = 0;
    for (LayoutKind kind : {LayoutKind::Regular, LayoutKind::NonRegular}) {
        const auto layout = make_layout(kind, spec.size, spec.size, 7);
        const HdrImage rec = reconstruct(frame_of(reference, layout, cam, 11), rc);
        psnr_db[i++] = psnr(reference, rec, 1.0);
    }
    const double gap = psnr_db[1] - psnr_db[0];
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    check.note("regular " + fmt(psnr_db[0], 2) + " dB, non-regular " +
               fmt(psnr_db[1], 2) + " dB, gap " + fmt(gap, 2) + " dB, " +
               fmt(seconds, 0) + " s");
    check.require(gap >= 3.0, "gap below 3 dB");
    check.require(seconds < 300.0, "exceeded 5 min single-threaded");
    return check;
}

// --- criterion 2: stripe spectral coherence --------------------------------

Check criterion_stripe_coherence() {
    Check check;
    const int n = 128;
    const HdrImage image = stripes(n, 2, StripeOrientation::Vertical, 0.1, 0.3);
    const CameraModel cam = noiseless_camera();

    auto spectrum_ratio = [&](const SensorLayout& layout) {
        const SampledFrame frame = frame_of(image, layout, cam);
        const CoherenceReport r =
            coherence_report(naive_zero_fill(frame), n / 2, 0);
        return r.max_spurious / r.peak_at_true;
    };

    const double regular_ratio =
        spectrum_ratio(make_layout(LayoutKind::Regular, n, n, 0));
    double nonregular_mean = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        nonregular_mean +=
            spectrum_ratio(make_layout(LayoutKind::NonRegular, n, n, seed));
    }
    nonregular_mean /= 10.0;
    check.note("regular spurious/true " + fmt(regular_ratio, 3) +
               ", non-regular mean " + fmt(nonregular_mean, 4));
    check.require(regular_ratio >= 0.5, "regular alias below 0.5x true peak");
    check.require(nonregular_mean < 0.2, "non-regular alias above 0.2x true peak");
    return check;
}

// --- criterion 3: sqrt(3) SNR gain ------------------------------------------

Check criterion_snr_gain() {
    Check check;
    CameraModel cam;  // shot noise only
    cam.enable_noise = true;
    cam.read_sigma_rel = 0.0;
    const int side = 200;  // 10^4 blocks
    const auto layout = make_layout(LayoutKind::Regular, side, side, 0);
    const RawMeasurements noisy =
        apply_camera(sample(HdrImage(side, side, 0.1), layout), cam, 3);

    auto snr = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= double(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= double(v.size() - 1);
        return mean / std::sqrt(var);
    };
    const double ratio = snr(noisy.large) / snr(noisy.small);
    const double expected = std::sqrt(3.0);
    check.note("SNR ratio " + fmt(ratio, 4) + " vs sqrt(3) = " + fmt(expected, 4));
    check.require(std::abs(ratio - expected) <= 0.1 * expected,
                  "ratio outside sqrt(3) +- 10%");
    return check;
}

// --- criterion 4: dynamic range extension and fill factors ------------------

Check criterion_dynamic_range() {
    Check check;
    const CameraModel cam = noiseless_camera();
    const auto layout = make_layout(LayoutKind::Regular, 8, 8, 0);
    const double floor_c = cam.noise_floor_rel;
    const double sat = cam.sat_rel;

    auto fill_factor = [&](double c) {
        const SampledFrame f = frame_of(HdrImage(8, 8, c), layout, cam);
        int valid_cells = 0;
        for (int b = 0; b < f.block_count(); ++b) {
            if (f.small_validity[b] == Validity::Valid) valid_cells += 1;
            if (f.large_validity[b] == Validity::Valid) valid_cells += 3;
        }
        return double(valid_cells) / double(4 * f.block_count());
    };
    auto any_valid = [&](double c) { return fill_factor(c) > 0.0; };

    // regime interiors reproduce the documented local fill factors exactly
    bool regimes_ok = true;
    for (double c = 1e-4; c <= 1.0; c *= 1.07) {
        const double ff = fill_factor(std::min(c, 1.0));
        double expected;
        if (c < floor_c / 3.0 * (1.0 - 1e-9)) expected = 0.0;
        else if (c < floor_c * (1.0 - 1e-9)) expected = 0.75;
        else if (c < sat / 3.0 * (1.0 - 1e-9)) expected = 1.0;
        else if (c < sat * (1.0 - 1e-9)) expected = 0.25;
        else expected = 0.0;
        const bool near_regime_edge =
            std::abs(c - floor_c / 3.0) < 1e-6 || std::abs(c - floor_c) < 1e-6 ||
            std::abs(c - sat / 3.0) < 1e-6 || std::abs(c - sat) < 1e-6;
        if (!near_regime_edge && ff != expected) {
            regimes_ok = false;
            check.note("fill factor " + fmt(ff, 2) + " at c=" + fmt(c, 6) +
                       " (expected " + fmt(expected, 2) + ")");
            break;
        }
    }
    check.require(regimes_ok, "regime fill factors wrong");

    // interval boundaries: [floor/3, sat), 3x wider at the lower end
    check.require(any_valid(floor_c / 3.0), "floor/3 should be valid");
    check.require(!any_valid(floor_c / 3.0 * (1.0 - 1e-9)),
                  "below floor/3 should be invalid");
    check.require(any_valid(sat * (1.0 - 1e-12)), "just below sat should be valid");
    check.require(!any_valid(sat), "sat should be invalid");
    check.require(fill_factor(floor_c / 3.0) == 0.75, "lower bound regime");
    check.require(fill_factor(floor_c) == 1.0, "mid regime lower bound");
    check.note("valid interval [" + fmt(floor_c / 3.0, 6) + ", " + fmt(sat, 2) +
               "), 3x extension at the lower end");
    return check;
}

// --- criterion 5: reconstruction consistency --------------------------------

Check criterion_consistency() {
    Check check;
    const CameraModel cam = noiseless_camera();

    {   // constant image, defaults
        const auto layout = make_layout(LayoutKind::NonRegular, 16, 16, 3);
        const HdrImage rec =
            reconstruct(frame_of(HdrImage(16, 16, 0.2), layout, cam),
                        ReconstructionConfig{});
        double worst = 0.0;
        for (double v : rec.data()) worst = std::max(worst, std::abs(v - 0.2) / 0.2);
        check.note("constant max rel err " + fmt(worst * 1e6, 3) + "e-6");
        check.require(worst < 1e-6, "constant image beyond 1e-6 relative");
    }
    {   // single cosine
        const int n = 64;
        HdrImage img(n, n, 0.0);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                img(x, y) = 0.1 + 0.05 * std::cos(2.0 * std::numbers::pi * x / 32.0);
            }
        }
        const auto layout = make_layout(LayoutKind::NonRegular, n, n, 5);
        const SampledFrame frame = frame_of(img, layout, cam);
        const HdrImage rec = reconstruct(frame, ReconstructionConfig{});
        const double rms = rms_diff(rec, img);
        check.note("cosine RMS " + fmt(rms * 1e3, 3) + "e-3");
        check.require(rms < 1e-3, "cosine beyond 1e-3 RMS");

        // joint-deconvolution check at a tight solver budget
        ReconstructionConfig tight;
        tight.max_iterations = 2500;
        tight.min_residual_gain = 0.0;
        const HdrImage rec2 = reconstruct(frame, tight);
        double worst_small = 0.0, worst_binned = 0.0;
        for (const GridConstraint& c : expand_to_grid(frame)) {
            double sum = 0.0;
            for (int i = 0; i < c.cell_count; ++i) {
                sum += rec2(c.cells[i][0], c.cells[i][1]);
            }
            (c.cell_count == 1 ? worst_small : worst_binned) =
                std::max(c.cell_count == 1 ? worst_small : worst_binned,
                         std::abs(sum - c.value));
        }
        check.note("worst small-cell err " + fmt(worst_small * 1e4, 3) +
                   "e-4, worst 3-cell-sum err " + fmt(worst_binned * 1e4, 3) + "e-4");
        check.require(worst_small < 1e-4, "small-pixel cells beyond 1e-4");
        check.require(worst_binned < 1e-4, "binned sums beyond 1e-4");
    }
    return check;
}

// --- criterion 6: oracle equivalence ----------------------------------------

Check criterion_oracle_equivalence() {
    Check check;
    const CameraModel cam = noiseless_camera();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(-0.012, 0.012);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    int regions = 0, agreements = 0, degenerate = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 2 && regions < 100; ++trial) {
        // band-limited truth: 8-periodic, |k| <= 2 on every 8x8 tile
        const int n = 96;
        HdrImage img(n, n, 0.0);
        for (int su = -2; su <= 2; ++su) {
            for (int sv = -2; sv <= 2; ++sv) {
                if (su == 0 && sv == 0) continue;
                const double a = amp(rng);
                const double p = phase(rng);
                for (int y = 0; y < n; ++y) {
                    for (int x = 0; x < n; ++x) {
                        img(x, y) += a * std::cos(2.0 * std::numbers::pi *
                                                      (su * y + sv * x) / 8.0 + p);
                    }
                }
            }
        }
        for (double& v : img.data()) v += 0.2;
        const auto layout =
            make_layout(LayoutKind::NonRegular, n, n, 100 + trial);
        SampledFrame frame = frame_of(img, layout, cam);

        // randomly discard one reading in ~15% of the blocks; every block
        // keeps a reading, so region retention stays >= 50%
        for (int b = 0; b < frame.block_count(); ++b) {
            if (rng() % 100 < 15) {
                if (rng() & 1) {
                    frame.small_validity[b] = Validity::DiscardedUnderexposed;
                } else {
                    frame.large_validity[b] = Validity::DiscardedOverexposed;
                }
            }
        }

        ReconstructionConfig cfg;  // verification budget: run the pursuit deep
        cfg.max_iterations = 800;
        cfg.min_residual_gain = 0.0;
        const HdrImage rec = reconstruct(frame, cfg);

        // random interior regions; at the image boundary the pursuit
        // extrapolates past the data while the oracle stays region-local
        std::vector<std::pair<int, int>> offsets;
        for (int ry = 8; ry + 16 <= n; ry += 8) {
            for (int rx = 8; rx + 16 <= n; rx += 8) {
                offsets.emplace_back(rx, ry);
            }
        }
        std::shuffle(offsets.begin(), offsets.end(), rng);
        for (const auto& [rx, ry] : offsets) {
            if (regions >= 100) break;
            ImagePatch patch;
            try {
                patch = oracle_least_squares(frame, {rx, ry, 8, 8}, 2);
            } catch (const DegenerateSystemError&) {
                ++degenerate;
                continue;
            }
            ++regions;
            double diff2 = 0.0, ref2 = 0.0;
            for (int y = 0; y < 8; ++y) {
                for (int x = 0; x < 8; ++x) {
                    const double d = patch.at(x, y) - rec(rx + x, ry + y);
                    diff2 += d * d;
                    ref2 += patch.at(x, y) * patch.at(x, y);
                }
            }
            const double ratio = std::sqrt(diff2 / ref2);
            worst_ratio = std::max(worst_ratio, ratio);
            if (ratio <= 0.01) ++agreements;
        }
    }
    check.note(std::to_string(agreements) + "/" + std::to_string(regions) +
               " regions within 1% RMS, worst " + fmt(worst_ratio * 100, 3) +
               "%, " + std::to_string(degenerate) + " degenerate skipped");
    check.require(regions >= 100, "fewer than 100 usable regions");
    check.require(agreements == regions, "oracle disagreement beyond 1% RMS");
    return check;
}

// --- criterion 7: dataset direction ------------------------------------------

HdrImage natural_like_image(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> data(std::size_t(n) * n, 0.15);

    // smooth base illumination
    for (int i = 0; i < 5; ++i) {
        const double a = 0.03 + 0.08 * unit(rng);
        const double fu = std::floor(unit(rng) * 4.0) + 1.0;
        const double fv = std::floor(unit(rng) * 4.0) + 1.0;
        const double p = 2.0 * std::numbers::pi * unit(rng);
        const double q = 2.0 * std::numbers::pi * unit(rng);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                data[std::size_t(y) * n + x] +=
                    a * std::cos(2.0 * std::numbers::pi * fu * x / n + p) *
                    std::cos(2.0 * std::numbers::pi * fv * y / n + q);
            }
        }
    }
    // oriented texture patches with mid-to-high spatial frequency
    for (int i = 0; i < 3; ++i) {
        const double freq = 0.12 + 0.3 * unit(rng);  // cycles per pixel
        const double theta = std::numbers::pi * unit(rng);
        const double cx = n * unit(rng), cy = n * unit(rng);
        const double sigma = n * (0.1 + 0.15 * unit(rng));
        const double a = 0.04 + 0.08 * unit(rng);
        const double p = 2.0 * std::numbers::pi * unit(rng);
        const double kx = 2.0 * std::numbers::pi * freq * std::cos(theta);
        const double ky = 2.0 * std::numbers::pi * freq * std::sin(theta);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                data[std::size_t(y) * n + x] +=
                    a * std::exp(-r2 / (2.0 * sigma * sigma)) *
                    std::cos(kx * x + ky * y + p);
            }
        }
    }
    // soft edges
    for (int i = 0; i < 2; ++i) {
        const double theta = std::numbers::pi * unit(rng);
        const double off = n * (0.25 + 0.5 * unit(rng));
        const double h = (unit(rng) - 0.5) * 0.3;
        const double w = 1.0 + 2.0 * unit(rng);
        const double nx = std::cos(theta), ny = std::sin(theta);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double t = (nx * x + ny * y - off) / w;
                data[std::size_t(y) * n + x] += h / (1.0 + std::exp(-t));
            }
        }
    }
    // an HDR highlight that clips the large pixels locally
    {
        const double cx = n * unit(rng), cy = n * unit(rng);
        const double sigma = n * (0.04 + 0.05 * unit(rng));
        const double a = 1.0 + 1.5 * unit(rng);
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
                data[std::size_t(y) * n + x] +=
                    a * std::exp(-r2 / (2.0 * sigma * sigma));
            }
        }
    }
    for (double& v : data) v = std::max(v, 0.0);
    return HdrImage(n, n, std::move(data));
}

Check criterion_dataset_direction() {
    Check check;
    const auto dir =
        std::filesystem::temp_directory_path() / "nrhdr_acceptance_corpus";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const int count = 12;
    for (int i = 0; i < count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "img%02d.pfm", i);
        write_pfm(natural_like_image(3000 + i, 128), dir / name);
    }
    PipelineConfig cfg;  // defaults: noise on, both layouts
    cfg.out_dir = dir / "out";
    cfg.emit.recon_pfm = false;
    cfg.emit.tonemap_png = false;
    cfg.emit.clipmask_png = false;
    cfg.seed = 9;
    const auto rows = evaluate_corpus(dir, cfg);
    double mean_psnr[2] = {0, 0}, mean_pu21[2] = {0, 0};
    for (const auto& r : rows) {
        if (r.image != "mean") continue;
        const int i = r.layout == "regular" ? 0 : 1;
        mean_psnr[i] = r.psnr_db;
        mean_pu21[i] = r.pu21_psnr_db;
    }
    check.note("PSNR regular " + fmt(mean_psnr[0], 2) + " vs non-regular " +
               fmt(mean_psnr[1], 2) + " dB; PU21 " + fmt(mean_pu21[0], 2) +
               " vs " + fmt(mean_pu21[1], 2) + " dB over " +
               std::to_string(count) + " images");
    check.require(mean_psnr[1] >= mean_psnr[0], "non-regular PSNR mean below regular");
    check.require(mean_pu21[1] >= mean_pu21[0], "non-regular PU21 mean below regular");
    return check;
}

// --- criterion 8: metric self-tests -----------------------------------------

Check criterion_metric_selftests() {
    Check check;
    {   // closed-form PSNR
        const double v = psnr(HdrImage(4, 4, 0.5), HdrImage(4, 4, 0.6), 1.0);
        check.require(std::abs(v - 20.0) < 1e-6,
                      "PSNR 20 dB case off by " + fmt(v - 20.0, 9));
    }
    {   // PU21 golden table
        std::ifstream golden(std::string(NRHDR_SOURCE_DIR) +
                             "/tests/data/pu21_golden.csv");
        check.require(golden.good(), "golden table missing");
        std::string line;
        std::getline(golden, line);
        double worst = 0.0;
        int rows = 0;
        while (std::getline(golden, line)) {
            const auto comma = line.find(',');
            const double lum = std::stod(line.substr(0, comma));
            const double expected = std::stod(line.substr(comma + 1));
            worst = std::max(worst, std::abs(pu21_encode(lum) - expected));
            ++rows;
        }
        check.note("PU21 worst |err| " + fmt(worst * 1e9, 3) + "e-9 over " +
                   std::to_string(rows) + " probes");
        check.require(rows == 64, "expected 64 golden probes");
        check.require(worst < 1e-6, "PU21 encode beyond 1e-6 of reference");
    }
    {   // Reinhard closed form
        const HdrImage out = reinhard_tonemap(HdrImage(6, 6, 1.0));
        const double expected = 0.18 / 1.18;
        check.require(std::abs(out(0, 0) - expected) < 1e-5,
                      "Reinhard constant case off");
    }
    return check;
}

// --- criterion 9: determinism suite ------------------------------------------

Check criterion_determinism() {
    Check check;
    {   // layouts
        const auto a = make_layout(LayoutKind::NonRegular, 64, 64, 123);
        const auto b = make_layout(LayoutKind::NonRegular, 64, 64, 123);
        check.require(a == b, "layout not reproducible");
    }
    CameraModel cam;  // noise on
    const auto layout = make_layout(LayoutKind::NonRegular, 32, 32, 5);
    ZoneplateSpec spec;
    spec.size = 32;
    const HdrImage img = zoneplate(spec);
    {   // frames
        const SampledFrame f1 = frame_of(img, layout, cam, 77);
        const SampledFrame f2 = frame_of(img, layout, cam, 77);
        check.require(f1.small == f2.small && f1.large == f2.large,
                      "readings not bit-identical");
        check.require(f1.small_validity == f2.small_validity &&
                          f1.large_validity == f2.large_validity,
                      "validity not reproducible");
    }
    {   // reconstruction across worker counts and repeated runs
        const SampledFrame frame = frame_of(img, layout, cam, 77);
        ReconstructionConfig rc;
        const HdrImage r1 = reconstruct(frame, rc);
        rc.threads = 4;
        const HdrImage r4 = reconstruct(frame, rc);
        rc.threads = 1;
        const HdrImage r1b = reconstruct(frame, rc);
        bool same = true;
        for (std::size_t i = 0; i < r1.pixel_count(); ++i) {
            same &= r1.data()[i] == r4.data()[i];
            same &= r1.data()[i] == r1b.data()[i];
        }
        check.require(same, "reconstruction differs across runs/threads");
    }
    {   // corpus CSV minus timing
        const auto dir =
            std::filesystem::temp_directory_path() / "nrhdr_acceptance_det";
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        write_pfm(img, dir / "zone.pfm");
        write_pfm(natural_like_image(1, 32), dir / "tex.pfm");
        PipelineConfig cfg;
        cfg.out_dir = dir / "out";
        cfg.emit.recon_pfm = false;
        cfg.emit.tonemap_png = false;
        cfg.emit.clipmask_png = false;
        auto stripped = [&](int threads) {
            cfg.recon.threads = threads;
            std::istringstream in(to_csv(evaluate_corpus(dir, cfg)));
            std::ostringstream out;
            std::string line;
            while (std::getline(in, line)) {
                const auto last = line.rfind(',');
                const auto prev = line.rfind(',', last - 1);
                out << line.substr(0, prev) << line.substr(last) << '\n';
            }
            return out.str();
        };
        check.require(stripped(1) == stripped(2),
                      "CSV differs across worker counts");
    }
    return check;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "zoneplate anti-aliasing gap", criterion_zoneplate_gap},
        {2, "stripe spectral coherence", criterion_stripe_coherence},
        {3, "sqrt(3) SNR gain", criterion_snr_gain},
        {4, "300% dynamic range extension", criterion_dynamic_range},
        {5, "reconstruction consistency", criterion_consistency},
        {6, "oracle equivalence", criterion_oracle_equivalence},
        {7, "dataset direction", criterion_dataset_direction},
        {8, "metric self-tests", criterion_metric_selftests},
        {9, "determinism suite", criterion_determinism},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
            continue;
        }
        Check result;
        try {
            result = c.run();
        } catch (const std::exception& e) {
            result.ok = false;
            result.note(std::string("exception: ") + e.what());
        }
        std::printf("[criterion %d] %-32s %s%s%s\n", c.id, c.name,
                    result.ok ? "PASS" : "FAIL",
                    result.detail.empty() ? "" : "  -- ",
                    result.detail.c_str());
        std::fflush(stdout);
        if (!result.ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
