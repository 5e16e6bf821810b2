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

#include <filesystem>

#include "nrhdr/image.hpp"

namespace nrhdr {

/// Read a grayscale PFM ("Pf"). The sign of the scale field selects
/// endianness per the PFM convention; rows are stored bottom-up. Color PFM
/// ("PF") is rejected with a message naming the remedy.
HdrImage read_pfm(const std::filesystem::path& path);

/// Write grayscale PFM, little-endian (scale -1.0), rows bottom-up.
/// Values are stored as 32-bit floats.
void write_pfm(const HdrImage& image, const std::filesystem::path& path);

/// 8-bit grayscale PNG; input clamped to [0,1], byte = round(255 * v).
void write_png(const HdrImage& raster, const std::filesystem::path& path);

/// 8-bit RGB PNG from an interleaved [0,1] color raster.
void write_png(const ColorImage& raster, const std::filesystem::path& path);

}  // namespace nrhdr
