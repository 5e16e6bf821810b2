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

#include "nrhdr/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace nrhdr {

namespace {

// The FFTW planner is not thread-safe; executing cached plans is.
std::mutex planner_mutex;
std::map<std::tuple<int, int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int height, int width, int sign) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto key = std::make_tuple(height, width, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    std::vector<fftw_complex> in(std::size_t(height) * width);
    std::vector<fftw_complex> out(std::size_t(height) * width);
    // FFTW_UNALIGNED lets the plan run on any caller buffer later.
    fftw_plan plan = fftw_plan_dft_2d(height, width, in.data(), out.data(),
                                      sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    plan_cache.emplace(key, plan);
    return plan;
}

}  // namespace

Fft2d::Fft2d(int height, int width) : height_(height), width_(width) {
    if (height <= 0 || width <= 0) {
        throw std::invalid_argument("fft size must be positive");
    }
    forward_plan_ = get_plan(height, width, FFTW_FORWARD);
    backward_plan_ = get_plan(height, width, FFTW_BACKWARD);
}

void Fft2d::forward(std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(forward_plan_),
                     reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
}

void Fft2d::backward(std::complex<double>* in, std::complex<double>* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(backward_plan_),
                     reinterpret_cast<fftw_complex*>(in),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace nrhdr
