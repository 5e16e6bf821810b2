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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "nrhdr/config.hpp"
#include "nrhdr/io.hpp"
#include "nrhdr/layout.hpp"
#include "nrhdr/metrics.hpp"
#include "nrhdr/pipeline.hpp"
#include "nrhdr/recon.hpp"
#include "nrhdr/sensor.hpp"
#include "nrhdr/synth.hpp"

namespace py = pybind11;
using namespace nrhdr;

namespace {

using in_array = py::array_t<double, py::array::c_style | py::array::forcecast>;

HdrImage image_from_array(const in_array& arr) {
    if (arr.ndim() != 2) {
        throw std::invalid_argument("expected a 2D array (height, width)");
    }
    const int h = int(arr.shape(0));
    const int w = int(arr.shape(1));
    std::vector<double> data(arr.data(), arr.data() + std::size_t(w) * h);
    return HdrImage(w, h, std::move(data));
}

py::array_t<double> array_from_image(const HdrImage& img) {
    py::array_t<double> arr({img.height(), img.width()});
    std::copy(img.data().begin(), img.data().end(), arr.mutable_data());
    return arr;
}

py::array_t<double> blocks_array(const std::vector<double>& v, int rows, int cols) {
    py::array_t<double> arr({rows, cols});
    std::copy(v.begin(), v.end(), arr.mutable_data());
    return arr;
}

py::array_t<std::uint8_t> validity_array(const std::vector<Validity>& v,
                                         int rows, int cols) {
    py::array_t<std::uint8_t> arr({rows, cols});
    for (std::size_t i = 0; i < v.size(); ++i) {
        arr.mutable_data()[i] = std::uint8_t(v[i]);
    }
    return arr;
}

}  // namespace

PYBIND11_MODULE(nrhdr, m) {
    m.doc() = "Dual-pixel snapshot HDR sensor simulation and sparse Fourier "
              "reconstruction";

    py::enum_<LayoutKind>(m, "LayoutKind")
        .value("REGULAR", LayoutKind::Regular)
        .value("NONREGULAR", LayoutKind::NonRegular);

    py::enum_<Validity>(m, "Validity")
        .value("VALID", Validity::Valid)
        .value("DISCARDED_OVEREXPOSED", Validity::DiscardedOverexposed)
        .value("DISCARDED_UNDEREXPOSED", Validity::DiscardedUnderexposed)
        .value("KEPT_DESPITE_CLIP", Validity::KeptDespiteClip)
        .value("KEPT_DESPITE_NOISE", Validity::KeptDespiteNoise);

    py::class_<SensorLayout>(m, "SensorLayout")
        .def_readonly("kind", &SensorLayout::kind)
        .def_readonly("seed", &SensorLayout::seed)
        .def_property_readonly("width", &SensorLayout::width)
        .def_property_readonly("height", &SensorLayout::height)
        .def_property_readonly("corners",
                               [](const SensorLayout& l) {
                                   py::array_t<std::uint8_t> arr(
                                       {l.block_rows, l.block_cols});
                                   std::copy(l.corner.begin(), l.corner.end(),
                                             arr.mutable_data());
                                   return arr;
                               })
        .def("save", &write_layout_file, py::arg("path"))
        .def_static("load", &read_layout_file, py::arg("path"))
        .def("__eq__", [](const SensorLayout& a, const SensorLayout& b) {
            return a == b;
        });

    m.def(
        "make_layout",
        [](const std::string& kind, int width, int height, std::uint64_t seed,
           int regular_corner) {
            return make_layout(layout_kind_from_string(kind), width, height,
                               seed, regular_corner);
        },
        py::arg("kind"), py::arg("width"), py::arg("height"), py::arg("seed") = 0,
        py::arg("regular_corner") = 1);

    m.def("classify_pixels", [](const SensorLayout& layout) {
        const PixelClassGrid grid = classify_pixels(layout);
        py::array_t<bool> small({grid.height(), grid.width()});
        py::array_t<std::int32_t> block({grid.height(), grid.width()});
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                const auto pc = grid.at(x, y);
                small.mutable_data()[std::size_t(y) * grid.width() + x] = pc.small;
                block.mutable_data()[std::size_t(y) * grid.width() + x] = pc.block;
            }
        }
        return py::make_tuple(small, block);
    });

    py::class_<CameraModel>(m, "CameraModel")
        .def(py::init<>())
        .def_readwrite("sat_rel", &CameraModel::sat_rel)
        .def_readwrite("noise_floor_rel", &CameraModel::noise_floor_rel)
        .def_readwrite("photon_scale", &CameraModel::photon_scale)
        .def_readwrite("read_sigma_rel", &CameraModel::read_sigma_rel)
        .def_readwrite("enable_noise", &CameraModel::enable_noise)
        .def("validate", &CameraModel::validate);

    py::class_<RawMeasurements>(m, "RawMeasurements")
        .def_property_readonly("small",
                               [](const RawMeasurements& r) {
                                   return blocks_array(r.small, r.block_rows,
                                                       r.block_cols);
                               })
        .def_property_readonly("large", [](const RawMeasurements& r) {
            return blocks_array(r.large, r.block_rows, r.block_cols);
        });

    py::class_<SampledFrame>(m, "SampledFrame")
        .def_readonly("layout", &SampledFrame::layout)
        .def_property_readonly("small",
                               [](const SampledFrame& f) {
                                   return blocks_array(f.small,
                                                       f.layout.block_rows,
                                                       f.layout.block_cols);
                               })
        .def_property_readonly("large",
                               [](const SampledFrame& f) {
                                   return blocks_array(f.large,
                                                       f.layout.block_rows,
                                                       f.layout.block_cols);
                               })
        .def_property_readonly("small_validity",
                               [](const SampledFrame& f) {
                                   return validity_array(f.small_validity,
                                                         f.layout.block_rows,
                                                         f.layout.block_cols);
                               })
        .def_property_readonly("large_validity", [](const SampledFrame& f) {
            return validity_array(f.large_validity, f.layout.block_rows,
                                  f.layout.block_cols);
        });

    m.def("sample", [](const in_array& image, const SensorLayout& layout) {
        return sample(image_from_array(image), layout);
    });
    m.def("apply_camera", &apply_camera, py::arg("measurements"),
          py::arg("camera"), py::arg("noise_seed") = 0);
    m.def("classify", &classify, py::arg("measurements"), py::arg("layout"),
          py::arg("camera"));
    m.def("naive_zero_fill", [](const SampledFrame& frame) {
        return array_from_image(naive_zero_fill(frame));
    });

    py::class_<ReconstructionConfig>(m, "ReconstructionConfig")
        .def(py::init<>())
        .def_readwrite("model_block", &ReconstructionConfig::model_block)
        .def_readwrite("border", &ReconstructionConfig::border)
        .def_readwrite("fft_size", &ReconstructionConfig::fft_size)
        .def_readwrite("max_iterations", &ReconstructionConfig::max_iterations)
        .def_readwrite("gamma", &ReconstructionConfig::gamma)
        .def_readwrite("rho", &ReconstructionConfig::rho)
        .def_readwrite("min_residual_gain",
                       &ReconstructionConfig::min_residual_gain)
        .def_readwrite("fallback_weight", &ReconstructionConfig::fallback_weight)
        .def_readwrite("use_reconstructed_context",
                       &ReconstructionConfig::use_reconstructed_context)
        .def_readwrite("threads", &ReconstructionConfig::threads)
        .def("validate", &ReconstructionConfig::validate);

    m.def(
        "reconstruct",
        [](const SampledFrame& frame, const ReconstructionConfig& cfg) {
            return array_from_image(reconstruct(frame, cfg));
        },
        py::arg("frame"), py::arg("config") = ReconstructionConfig{});

    m.def(
        "oracle_least_squares",
        [](const SampledFrame& frame, std::tuple<int, int, int, int> region,
           int k_limit, double fallback_weight) {
            const auto [x0, y0, w, h] = region;
            const ImagePatch patch =
                oracle_least_squares(frame, {x0, y0, w, h}, k_limit,
                                     fallback_weight);
            py::array_t<double> arr({patch.rect.height, patch.rect.width});
            std::copy(patch.values.begin(), patch.values.end(),
                      arr.mutable_data());
            return arr;
        },
        py::arg("frame"), py::arg("region"), py::arg("k_limit"),
        py::arg("fallback_weight") = 0.25);

    m.def(
        "zoneplate",
        [](int size, double lum_max, std::pair<double, double> gradient,
           double chirp_rate) {
            ZoneplateSpec spec;
            spec.size = size;
            spec.lum_max = lum_max;
            spec.gradient_lo = gradient.first;
            spec.gradient_hi = gradient.second;
            spec.chirp_rate = chirp_rate;
            return array_from_image(zoneplate(spec));
        },
        py::arg("size") = 512, py::arg("lum_max") = 1.0,
        py::arg("gradient") = std::pair<double, double>(0.01, 1.0),
        py::arg("chirp_rate") = 1.0);

    m.def(
        "stripes",
        [](int size, int period, const std::string& orientation, double low,
           double high) {
            const StripeOrientation o = orientation == "horizontal"
                                            ? StripeOrientation::Horizontal
                                            : StripeOrientation::Vertical;
            return array_from_image(stripes(size, period, o, low, high));
        },
        py::arg("size"), py::arg("period"), py::arg("orientation") = "vertical",
        py::arg("low") = 0.1, py::arg("high") = 0.5);

    m.def("coherence_report",
          [](const in_array& image, int freq_x, int freq_y) {
              const CoherenceReport r =
                  coherence_report(image_from_array(image), freq_x, freq_y);
              py::dict d;
              d["peak_at_true"] = r.peak_at_true;
              d["max_spurious"] = r.max_spurious;
              d["noise_floor"] = r.noise_floor;
              return d;
          });

    py::class_<DisplayModel>(m, "DisplayModel")
        .def(py::init<>())
        .def_readwrite("peak_cd_m2", &DisplayModel::peak_cd_m2)
        .def_readwrite("black_cd_m2", &DisplayModel::black_cd_m2);

    m.def("psnr", [](const in_array& ref, const in_array& test, double peak) {
        return psnr(image_from_array(ref), image_from_array(test), peak);
    }, py::arg("reference"), py::arg("test"), py::arg("peak") = 1.0);

    m.def("pu21_encode", [](double luminance) { return pu21_encode(luminance); });
    m.def(
        "pu21_psnr",
        [](const in_array& ref, const in_array& test, const DisplayModel& d) {
            return pu21_psnr(image_from_array(ref), image_from_array(test), d);
        },
        py::arg("reference"), py::arg("test"),
        py::arg("display") = DisplayModel{});

    m.def("reinhard_tonemap", [](const in_array& image) {
        return array_from_image(reinhard_tonemap(image_from_array(image)));
    });

    m.def("clipping_mask", [](const SampledFrame& frame) {
        const ColorImage mask = clipping_mask(frame);
        py::array_t<double> arr({mask.height(), mask.width(), 3});
        std::copy(mask.data().begin(), mask.data().end(), arr.mutable_data());
        return arr;
    });

    m.def("read_pfm", [](const std::filesystem::path& path) {
        return array_from_image(read_pfm(path));
    });
    m.def("write_pfm", [](const in_array& image,
                          const std::filesystem::path& path) {
        write_pfm(image_from_array(image), path);
    });
    m.def("write_png", [](const in_array& raster,
                          const std::filesystem::path& path) {
        write_png(image_from_array(raster), path);
    });
}
