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

namespace nrhdr {

/// Out-of-place 2D complex DFT, unnormalized (backward is the plain
/// exp(+i...) sum, no 1/N scaling). Plans are cached per size; execution is
/// safe from multiple threads on distinct buffers.
class Fft2d {
public:
    Fft2d(int height, int width);

    int height() const { return height_; }
    int width() const { return width_; }

    void forward(std::complex<double>* in, std::complex<double>* out) const;
    void backward(std::complex<double>* in, std::complex<double>* out) const;

private:
    int height_;
    int width_;
    void* forward_plan_;   // fftw_plan, owned by the process-wide cache
    void* backward_plan_;
};

}  // namespace nrhdr
