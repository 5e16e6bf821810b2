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

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "nrhdr/io.hpp"

namespace nrhdr {

namespace {

std::uint8_t quantize(double v) {
    return std::uint8_t(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void write_chunk(std::ofstream& out, const char type[4],
                 const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> buf;
    put_u32(buf, std::uint32_t(payload.size()));
    buf.insert(buf.end(), type, type + 4);
    buf.insert(buf.end(), payload.begin(), payload.end());
    const uLong crc =
        crc32(0L, buf.data() + 4, uInt(buf.size() - 4));
    put_u32(buf, std::uint32_t(crc));
    out.write(reinterpret_cast<const char*>(buf.data()),
              std::streamsize(buf.size()));
}

// channels = 1 (gray) or 3 (rgb); scanlines without filter bytes
void write_png_bytes(const std::vector<std::uint8_t>& pixels, int width,
                     int height, int channels,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open PNG file for writing: " +
                                 path.string());
    }
    static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G',
                                              '\r', '\n', 0x1a, '\n'};
    out.write(reinterpret_cast<const char*>(signature), 8);

    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, std::uint32_t(width));
    put_u32(ihdr, std::uint32_t(height));
    ihdr.push_back(8);                                  // bit depth
    ihdr.push_back(channels == 1 ? 0 : 2);              // gray / truecolor
    ihdr.push_back(0);                                  // compression
    ihdr.push_back(0);                                  // filter
    ihdr.push_back(0);                                  // no interlace
    write_chunk(out, "IHDR", ihdr);

    // prepend filter byte 0 to each scanline
    const std::size_t stride = std::size_t(width) * channels;
    std::vector<std::uint8_t> raw((stride + 1) * height);
    for (int y = 0; y < height; ++y) {
        raw[std::size_t(y) * (stride + 1)] = 0;
        std::copy_n(pixels.data() + std::size_t(y) * stride, stride,
                    raw.data() + std::size_t(y) * (stride + 1) + 1);
    }
    uLongf bound = compressBound(uLong(raw.size()));
    std::vector<std::uint8_t> idat(bound);
    if (compress2(idat.data(), &bound, raw.data(), uLong(raw.size()), 9) !=
        Z_OK) {
        throw std::runtime_error("zlib compression failed for " + path.string());
    }
    idat.resize(bound);
    write_chunk(out, "IDAT", idat);
    write_chunk(out, "IEND", {});
    if (!out.flush()) {
        throw std::runtime_error("failed writing PNG file: " + path.string());
    }
}

}  // namespace

void write_png(const HdrImage& raster, const std::filesystem::path& path) {
    std::vector<std::uint8_t> pixels(raster.pixel_count());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = quantize(raster.data()[i]);
    }
    write_png_bytes(pixels, raster.width(), raster.height(), 1, path);
}

void write_png(const ColorImage& raster, const std::filesystem::path& path) {
    std::vector<std::uint8_t> pixels(raster.data().size());
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        pixels[i] = quantize(raster.data()[i]);
    }
    write_png_bytes(pixels, raster.width(), raster.height(), 3, path);
}

}  // namespace nrhdr
