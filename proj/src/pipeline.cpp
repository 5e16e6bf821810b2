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

#include "nrhdr/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "nrhdr/io.hpp"
#include "nrhdr/layout.hpp"
#include "nrhdr/metrics.hpp"
#include "nrhdr/recon.hpp"
#include "nrhdr/sensor.hpp"
#include "nrhdr/synth.hpp"

namespace nrhdr {

namespace {

template <typename F>
auto staged(const char* stage, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(stage) + ": " + e.what());
    }
}

// log-magnitude spectrum, shifted so DC sits at the center, scaled to [0,1]
HdrImage spectrum_view(const HdrImage& image) {
    const std::vector<double> power = power_spectrum(image);
    const int w = image.width();
    const int h = image.height();
    HdrImage view(w, h, 0.0);
    double vmax = 0.0;
    std::vector<double> logp(power.size());
    for (std::size_t i = 0; i < power.size(); ++i) {
        logp[i] = std::log1p(power[i]);
        vmax = std::max(vmax, logp[i]);
    }
    if (vmax == 0.0) vmax = 1.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int ky = (y + h / 2) % h;
            const int kx = (x + w / 2) % w;
            view(x, y) = logp[std::size_t(ky) * w + kx] / vmax;
        }
    }
    return view;
}

QualityReport evaluate_one(const PipelineConfig& cfg, const HdrImage& reference,
                           const std::string& name, LayoutKind kind) {
    const auto start = std::chrono::steady_clock::now();
    QualityReport report;
    report.image = name;
    report.layout = to_string(kind);

    const SensorLayout layout = staged("layout", [&] {
        return make_layout(kind, reference.width(), reference.height(), cfg.seed,
                           cfg.regular_corner);
    });
    const RawMeasurements raw =
        staged("sampling", [&] { return sample(reference, layout); });
    const RawMeasurements shot =
        staged("camera", [&] { return apply_camera(raw, cfg.camera, cfg.seed); });
    const SampledFrame frame =
        staged("classification", [&] { return classify(shot, layout, cfg.camera); });
    const HdrImage recon = staged(
        "reconstruction", [&] { return reconstruct(frame, cfg.recon); });

    report.psnr_db = staged("metrics", [&] { return psnr(reference, recon, 1.0); });
    report.pu21_psnr_db = staged("metrics", [&] {
        return pu21_psnr(reference, recon, cfg.display, cfg.pu21_coeffs());
    });

    staged("output", [&] {
        std::filesystem::create_directories(cfg.out_dir);
        const std::string stem = name + "_" + to_string(kind);
        if (cfg.emit.recon_pfm) {
            write_pfm(recon, cfg.out_dir / (stem + "_recon.pfm"));
        }
        if (cfg.emit.tonemap_png) {
            write_png(reinhard_tonemap(recon), cfg.out_dir / (stem + "_recon_tm.png"));
        }
        if (cfg.emit.clipmask_png) {
            write_png(clipping_mask(frame), cfg.out_dir / (stem + "_clipmask.png"));
        }
        if (cfg.emit.spectrum_png) {
            write_png(spectrum_view(naive_zero_fill(frame)),
                      cfg.out_dir / (stem + "_spectrum.png"));
        }
        return 0;
    });

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::vector<LayoutKind> kinds_of(LayoutChoice choice) {
    switch (choice) {
        case LayoutChoice::Regular: return {LayoutKind::Regular};
        case LayoutChoice::NonRegular: return {LayoutKind::NonRegular};
        case LayoutChoice::Both:
            return {LayoutKind::Regular, LayoutKind::NonRegular};
    }
    return {};
}

std::string format_db(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s.precision(6);
    s << std::fixed << v;
    return s.str();
}

// nearest-rank percentile of a copy of the data
double percentile(std::span<const double> data, double q) {
    std::vector<double> sorted(data.begin(), data.end());
    std::size_t idx = std::size_t(std::ceil(q * double(sorted.size())));
    idx = std::min(std::max<std::size_t>(idx, 1), sorted.size()) - 1;
    auto nth = sorted.begin() + idx;
    std::nth_element(sorted.begin(), nth, sorted.end());
    return *nth;
}

}  // namespace

std::vector<QualityReport> run_pipeline(const PipelineConfig& cfg,
                                        const HdrImage& reference,
                                        const std::string& name) {
    cfg.validate();
    reference.validate();
    std::vector<QualityReport> reports;
    for (LayoutKind kind : kinds_of(cfg.layouts)) {
        reports.push_back(evaluate_one(cfg, reference, name, kind));
    }
    return reports;
}

std::vector<QualityReport> evaluate_corpus(const std::filesystem::path& dir,
                                           const PipelineConfig& cfg) {
    cfg.validate();
    if (!std::filesystem::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pfm") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw std::runtime_error("no .pfm files in " + dir.string());
    }

    std::vector<QualityReport> rows;
    for (const auto& path : files) {
        const std::string name = path.stem().string();
        HdrImage reference;
        double scale = 1.0;
        try {
            reference = read_pfm(path);
            // images are normalized so their 99.9th percentile maps to 1.0
            scale = percentile(reference.data(), 0.999);
            if (scale <= 0.0) {
                scale = *std::max_element(reference.data().begin(),
                                          reference.data().end());
            }
            if (scale > 0.0) {
                for (double& v : reference.data()) v /= scale;
            } else {
                scale = 1.0;
            }
            if (reference.width() % cfg.recon.model_block != 0 ||
                reference.height() % cfg.recon.model_block != 0 ||
                reference.width() % 2 != 0 || reference.height() % 2 != 0) {
                throw std::runtime_error(
                    "dimensions not divisible by the model block");
            }
        } catch (const std::exception& e) {
            for (LayoutKind kind : kinds_of(cfg.layouts)) {
                QualityReport r;
                r.image = name;
                r.layout = to_string(kind);
                r.error = true;
                r.message = e.what();
                rows.push_back(r);
            }
            continue;
        }
        for (QualityReport& r : run_pipeline(cfg, reference, name)) {
            r.norm_scale = scale;
            rows.push_back(std::move(r));
        }
    }

    // one mean row per layout over finite, error-free rows
    for (LayoutKind kind : kinds_of(cfg.layouts)) {
        QualityReport mean;
        mean.image = "mean";
        mean.layout = to_string(kind);
        int n = 0;
        for (const QualityReport& r : rows) {
            if (r.error || r.layout != mean.layout || !std::isfinite(r.psnr_db) ||
                !std::isfinite(r.pu21_psnr_db)) {
                continue;
            }
            mean.psnr_db += r.psnr_db;
            mean.pu21_psnr_db += r.pu21_psnr_db;
            mean.norm_scale += r.norm_scale;
            mean.wall_time_s += r.wall_time_s;
            ++n;
        }
        if (n == 0) {
            mean.error = true;
            mean.message = "no finite rows";
        } else {
            mean.psnr_db /= n;
            mean.pu21_psnr_db /= n;
            mean.norm_scale /= n;
            mean.wall_time_s /= n;
        }
        rows.push_back(std::move(mean));
    }
    return rows;
}

std::string to_csv(const std::vector<QualityReport>& rows) {
    std::ostringstream out;
    out << "image,layout,psnr_db,pu21_psnr_db,norm_scale,wall_time_s,error\n";
    for (const QualityReport& r : rows) {
        out << r.image << ',' << r.layout << ',';
        if (r.error) {
            std::string msg = r.message;
            std::replace(msg.begin(), msg.end(), ',', ';');
            std::replace(msg.begin(), msg.end(), '\n', ' ');
            out << ",,,," << msg << '\n';
            continue;
        }
        std::ostringstream scale;
        scale.precision(9);
        scale << r.norm_scale;
        out << format_db(r.psnr_db) << ',' << format_db(r.pu21_psnr_db) << ','
            << scale.str() << ',';
        out.precision(3);
        out << std::fixed << r.wall_time_s;
        out.unsetf(std::ios::fixed);
        out << ",\n";
    }
    return out.str();
}

}  // namespace nrhdr
