#pragma once

#include <cstdint>
#include <vector>

namespace roistream::roidet {

/// Row-major grayscale frame, luminance in [0,255].
struct FrameGray {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Binary raster with the same dimensions as its source frame.
struct EdgeMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // strictly 0 or 1

    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }

    bool operator==(const EdgeMap&) const = default;
};

/// Per-block motion flags, rows x cols, strictly binary.
struct BlockGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> flags;

    std::uint8_t at(int row, int col) const { return flags[static_cast<std::size_t>(row) * cols + col]; }
    std::uint8_t& at(int row, int col) { return flags[static_cast<std::size_t>(row) * cols + col]; }

    bool operator==(const BlockGrid&) const = default;
};

/// Axis-aligned pixel rectangle; (x,y) is the top-left corner, inclusive.
struct BoundingBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const BoundingBox&) const = default;
};

/// Per-segment detection output: stationary boxes come from the external
/// detector, moving boxes from the block-based motion pipeline. The two
/// lists are kept separate and never deduplicated against each other.
struct RoiSet {
    std::vector<BoundingBox> stationary;
    std::vector<BoundingBox> moving;
    int frame_width = 0;
    int frame_height = 0;
};

struct RoidetParams {
    double canny_low = 50.0;    // weak-edge gradient threshold
    double canny_high = 150.0;  // strong-edge gradient threshold
    int block_rows = 32;        // M
    int block_cols = 32;        // N
    int motion_threshold = 8;   // changed edge pixels per block, strict >
};

}  // namespace roistream::roidet
