#pragma once

// Per-pixel pieces of the Canny pipeline, shared by the serial and OpenMP
// loop nests so the arithmetic stays identical between the two.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "roistream/raster.hpp"

namespace roistream::roidet::detail {

inline const std::array<double, 25>& gaussian5x5() {
    static const std::array<double, 25> kernel = [] {
        const double sigma = 1.4;
        std::array<double, 25> k{};
        double sum = 0.0;
        for (int dy = -2; dy <= 2; ++dy) {
            for (int dx = -2; dx <= 2; ++dx) {
                double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
                k[(dy + 2) * 5 + (dx + 2)] = v;
                sum += v;
            }
        }
        for (double& v : k) v /= sum;
        return k;
    }();
    return kernel;
}

inline int clamp_coord(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

// Blur with replicated borders.
inline double blur_at(const std::uint8_t* data, int w, int h, int x, int y) {
    const auto& k = gaussian5x5();
    double acc = 0.0;
    for (int dy = -2; dy <= 2; ++dy) {
        int yy = clamp_coord(y + dy, h - 1);
        for (int dx = -2; dx <= 2; ++dx) {
            int xx = clamp_coord(x + dx, w - 1);
            acc += k[(dy + 2) * 5 + (dx + 2)] * data[static_cast<std::size_t>(yy) * w + xx];
        }
    }
    return acc;
}

// Gradient direction quantized to four symmetric neighbor pairs:
// 0 horizontal, 1 vertical, 2 main diagonal (+1,+1), 3 anti diagonal (+1,-1).
inline std::uint8_t direction_bin(double gx, double gy) {
    const double tan22 = 0.41421356237309503;  // tan(22.5 deg)
    const double tan67 = 2.414213562373095;    // tan(67.5 deg)
    double ax = std::abs(gx), ay = std::abs(gy);
    if (ay <= tan22 * ax) return 0;
    if (ay >= tan67 * ax) return 1;
    return (gx * gy > 0.0) ? 2 : 3;
}

// Interior pixels only; callers zero the one-pixel border.
inline void sobel_at(const double* blur, int w, int x, int y, double& mag, std::uint8_t& bin) {
    const double* r0 = blur + static_cast<std::size_t>(y - 1) * w;
    const double* r1 = blur + static_cast<std::size_t>(y) * w;
    const double* r2 = blur + static_cast<std::size_t>(y + 1) * w;
    double gx = (r0[x + 1] - r0[x - 1]) + 2.0 * (r1[x + 1] - r1[x - 1]) + (r2[x + 1] - r2[x - 1]);
    double gy = (r2[x - 1] - r0[x - 1]) + 2.0 * (r2[x] - r0[x]) + (r2[x + 1] - r0[x + 1]);
    mag = std::sqrt(gx * gx + gy * gy);
    bin = direction_bin(gx, gy);
}

// Keep a pixel when its magnitude is >= both neighbors along the gradient.
inline bool nms_keep(const double* mag, const std::uint8_t* bin, int w, int x, int y) {
    static constexpr int off[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
    std::size_t i = static_cast<std::size_t>(y) * w + x;
    if (mag[i] <= 0.0) return false;
    int dx = off[bin[i]][0], dy = off[bin[i]][1];
    double m1 = mag[i + static_cast<std::size_t>(dy) * w + dx];
    double m2 = mag[i - static_cast<std::size_t>(dy) * w - dx];
    return mag[i] >= m1 && mag[i] >= m2;
}

// Double threshold plus 8-connected hysteresis; identical (and serial) in
// both pipelines -- its output depends only on the set of strong/weak pixels.
EdgeMap hysteresis(const std::vector<double>& nms, int w, int h, double low, double high);

void validate_frame(const FrameGray& f);
void validate_params(const RoidetParams& p);
void validate_segment(const std::vector<FrameGray>& frames);
std::vector<BoundingBox> clip_boxes(const std::vector<BoundingBox>& boxes, int fw, int fh);

}  // namespace roistream::roidet::detail
