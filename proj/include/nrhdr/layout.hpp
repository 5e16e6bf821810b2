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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nrhdr {

enum class LayoutKind { Regular, NonRegular };

const char* to_string(LayoutKind kind);
LayoutKind layout_kind_from_string(const std::string& name);

/// Offset of the small pixel within its 2x2 block, by corner index:
/// 0 = top-left, 1 = top-right, 2 = bottom-left, 3 = bottom-right.
struct CellOffset {
    int dx;
    int dy;
};
CellOffset corner_offset(int corner);

/// Per-block orientation map of the dual-pixel sensor. Block (bx,by) covers
/// the HR cells [2bx, 2bx+2) x [2by, 2by+2); the small 1-cell pixel sits at
/// the block's corner cell and the L-shaped large pixel covers the other
/// three, so the two prototype pixels tile the sensor with no gaps.
struct SensorLayout {
    LayoutKind kind = LayoutKind::Regular;
    int block_cols = 0;
    int block_rows = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> corner;  // block_rows * block_cols entries in 0..3

    int width() const { return 2 * block_cols; }
    int height() const { return 2 * block_rows; }
    int block_count() const { return block_cols * block_rows; }
    int block_index(int bx, int by) const { return by * block_cols + bx; }
    std::uint8_t corner_at(int bx, int by) const {
        return corner[std::size_t(by) * block_cols + bx];
    }

    void validate() const;
    bool operator==(const SensorLayout&) const = default;
};

/// Build a layout covering width x height HR pixels (both even, >= 2).
/// NonRegular draws each block corner i.i.d. uniform from {0,1,2,3} with a
/// PRNG seeded by `seed`; Regular sets every corner to `regular_corner`.
SensorLayout make_layout(LayoutKind kind, int width, int height,
                         std::uint64_t seed, int regular_corner = 1);

/// Membership of one HR cell: the small pixel or a member of its block's
/// large pixel.
struct PixelClass {
    bool small = false;
    std::int32_t block = 0;

    bool operator==(const PixelClass&) const = default;
};

class PixelClassGrid {
public:
    PixelClassGrid(int width, int height)
        : width_(width), height_(height),
          cells_(std::size_t(width) * height) {}

    int width() const { return width_; }
    int height() const { return height_; }
    PixelClass& at(int x, int y) { return cells_[std::size_t(y) * width_ + x]; }
    PixelClass at(int x, int y) const { return cells_[std::size_t(y) * width_ + x]; }

private:
    int width_;
    int height_;
    std::vector<PixelClass> cells_;
};

/// Materialize the per-cell partition induced by a layout.
PixelClassGrid classify_pixels(const SensorLayout& layout);

// Text serialization:
//   NRHDR-LAYOUT v1 <kind> <block_cols> <block_rows> <seed>
// followed by block_rows lines of block_cols corner digits.
void write_layout(const SensorLayout& layout, std::ostream& out);
void write_layout_file(const SensorLayout& layout, const std::filesystem::path& path);
SensorLayout read_layout(std::istream& in);
SensorLayout read_layout_file(const std::filesystem::path& path);

}  // namespace nrhdr
