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

#include "nrhdr/layout.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nrhdr {

const char* to_string(LayoutKind kind) {
    return kind == LayoutKind::Regular ? "regular" : "nonregular";
}

LayoutKind layout_kind_from_string(const std::string& name) {
    if (name == "regular") return LayoutKind::Regular;
    if (name == "nonregular") return LayoutKind::NonRegular;
    throw std::invalid_argument("unknown layout kind '" + name +
                                "' (expected regular|nonregular)");
}

CellOffset corner_offset(int corner) {
    switch (corner) {
        case 0: return {0, 0};
        case 1: return {1, 0};
        case 2: return {0, 1};
        case 3: return {1, 1};
        default:
            throw std::invalid_argument("corner index must be in 0..3, got " +
                                        std::to_string(corner));
    }
}

void SensorLayout::validate() const {
    if (block_cols <= 0 || block_rows <= 0) {
        throw std::invalid_argument("layout must cover at least one block");
    }
    if (corner.size() != std::size_t(block_cols) * block_rows) {
        throw std::invalid_argument("layout corner map size mismatch");
    }
    for (std::uint8_t c : corner) {
        if (c > 3) throw std::invalid_argument("corner index out of range");
    }
    if (kind == LayoutKind::Regular) {
        for (std::uint8_t c : corner) {
            if (c != corner[0]) {
                throw std::invalid_argument(
                    "regular layout requires a constant corner map");
            }
        }
    }
}

SensorLayout make_layout(LayoutKind kind, int width, int height,
                         std::uint64_t seed, int regular_corner) {
    if (width < 2 || height < 2 || width % 2 != 0 || height % 2 != 0) {
        throw std::invalid_argument(
            "layout dimensions must be even and >= 2, got " +
            std::to_string(width) + "x" + std::to_string(height));
    }
    corner_offset(regular_corner);  // range check

    SensorLayout layout;
    layout.kind = kind;
    layout.block_cols = width / 2;
    layout.block_rows = height / 2;
    layout.seed = seed;
    layout.corner.resize(std::size_t(layout.block_cols) * layout.block_rows);

    if (kind == LayoutKind::Regular) {
        std::fill(layout.corner.begin(), layout.corner.end(),
                  std::uint8_t(regular_corner));
    } else {
        // mt19937_64 output is standard-specified, so the corner map is
        // reproducible bit-for-bit from (dims, seed).
        std::mt19937_64 rng(seed);
        for (auto& c : layout.corner) {
            c = std::uint8_t(rng() & 3);
        }
    }
    return layout;
}

PixelClassGrid classify_pixels(const SensorLayout& layout) {
    layout.validate();
    PixelClassGrid grid(layout.width(), layout.height());
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            const std::int32_t block = layout.block_index(bx, by);
            const CellOffset off = corner_offset(layout.corner_at(bx, by));
            for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                    const bool small = (dx == off.dx && dy == off.dy);
                    grid.at(2 * bx + dx, 2 * by + dy) = PixelClass{small, block};
                }
            }
        }
    }
    return grid;
}

void write_layout(const SensorLayout& layout, std::ostream& out) {
    layout.validate();
    out << "NRHDR-LAYOUT v1 " << to_string(layout.kind) << ' '
        << layout.block_cols << ' ' << layout.block_rows << ' ' << layout.seed
        << '\n';
    for (int by = 0; by < layout.block_rows; ++by) {
        for (int bx = 0; bx < layout.block_cols; ++bx) {
            out << char('0' + layout.corner_at(bx, by));
        }
        out << '\n';
    }
}

void write_layout_file(const SensorLayout& layout,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open layout file for writing: " +
                                 path.string());
    }
    write_layout(layout, out);
    if (!out.flush()) {
        throw std::runtime_error("failed writing layout file: " + path.string());
    }
}

SensorLayout read_layout(std::istream& in) {
    std::string magic, version, kind_name;
    SensorLayout layout;
    if (!(in >> magic >> version >> kind_name >> layout.block_cols >>
          layout.block_rows >> layout.seed) ||
        magic != "NRHDR-LAYOUT" || version != "v1") {
        throw std::runtime_error("not a NRHDR-LAYOUT v1 file");
    }
    layout.kind = layout_kind_from_string(kind_name);
    if (layout.block_cols <= 0 || layout.block_rows <= 0) {
        throw std::runtime_error("layout file has non-positive block counts");
    }
    layout.corner.reserve(std::size_t(layout.block_cols) * layout.block_rows);
    std::string line;
    std::getline(in, line);  // rest of header line
    for (int by = 0; by < layout.block_rows; ++by) {
        if (!std::getline(in, line)) {
            throw std::runtime_error("layout file truncated at block row " +
                                     std::to_string(by));
        }
        if (int(line.size()) != layout.block_cols) {
            throw std::runtime_error("layout row " + std::to_string(by) +
                                     " has wrong length");
        }
        for (char ch : line) {
            if (ch < '0' || ch > '3') {
                throw std::runtime_error("layout corner digits must be 0..3");
            }
            layout.corner.push_back(std::uint8_t(ch - '0'));
        }
    }
    layout.validate();
    return layout;
}

SensorLayout read_layout_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open layout file: " + path.string());
    }
    return read_layout(in);
}

}  // namespace nrhdr
