// Plain-loop reference versions of the raster kernels. The OpenMP pipeline
// in roidet.cpp must produce bit-identical output; tests enforce that.

#include <stdexcept>
#include <vector>

#include "roidet_detail.hpp"
#include "roistream/roidet.hpp"

namespace roistream::roidet::serial {

EdgeMap canny_edges(const FrameGray& frame, const RoidetParams& params) {
    detail::validate_frame(frame);
    detail::validate_params(params);
    const int w = frame.width, h = frame.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<double> blurred(n);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            blurred[static_cast<std::size_t>(y) * w + x] = detail::blur_at(frame.data.data(), w, h, x, y);

    std::vector<double> mag(n, 0.0);
    std::vector<std::uint8_t> bin(n, 0);
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            detail::sobel_at(blurred.data(), w, x, y, mag[static_cast<std::size_t>(y) * w + x],
                             bin[static_cast<std::size_t>(y) * w + x]);

    std::vector<double> nms(n, 0.0);
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x) {
            std::size_t i = static_cast<std::size_t>(y) * w + x;
            if (detail::nms_keep(mag.data(), bin.data(), w, x, y)) nms[i] = mag[i];
        }

    return detail::hysteresis(nms, w, h, params.canny_low, params.canny_high);
}

EdgeMap edge_difference(const EdgeMap& prev, const EdgeMap& cur) {
    if (prev.width != cur.width || prev.height != cur.height)
        throw std::invalid_argument("edge map dimensions differ");
    EdgeMap out{prev.width, prev.height, std::vector<std::uint8_t>(prev.bits.size())};
    for (std::size_t i = 0; i < prev.bits.size(); ++i) out.bits[i] = prev.bits[i] ^ cur.bits[i];
    return out;
}

BlockGrid block_motion(const EdgeMap& delta, const RoidetParams& params) {
    detail::validate_params(params);
    const int rows = params.block_rows, cols = params.block_cols;
    if (rows > delta.height || cols > delta.width)
        throw std::invalid_argument("block grid exceeds raster dimensions");
    const int bh = delta.height / rows, bw = delta.width / cols;
    BlockGrid grid{rows, cols, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0)};
    for (int r = 0; r < rows; ++r) {
        int y1 = (r == rows - 1) ? delta.height : (r + 1) * bh;
        for (int c = 0; c < cols; ++c) {
            int x1 = (c == cols - 1) ? delta.width : (c + 1) * bw;
            int count = 0;
            for (int y = r * bh; y < y1; ++y)
                for (int x = c * bw; x < x1; ++x)
                    count += delta.bits[static_cast<std::size_t>(y) * delta.width + x];
            grid.at(r, c) = count > params.motion_threshold ? 1 : 0;
        }
    }
    return grid;
}

RoiSet roidet_segment(const std::vector<FrameGray>& frames,
                      const std::vector<BoundingBox>& stationary_boxes,
                      const RoidetParams& params) {
    detail::validate_segment(frames);
    detail::validate_params(params);
    const int fw = frames.front().width, fh = frames.front().height;

    std::vector<BlockGrid> grids;
    EdgeMap prev = serial::canny_edges(frames[0], params);
    for (std::size_t i = 1; i < frames.size(); ++i) {
        EdgeMap cur = serial::canny_edges(frames[i], params);
        grids.push_back(serial::block_motion(serial::edge_difference(prev, cur), params));
        prev = std::move(cur);
    }
    BlockGrid accumulated = accumulate_motion(grids);

    RoiSet rois;
    rois.frame_width = fw;
    rois.frame_height = fh;
    rois.stationary = detail::clip_boxes(stationary_boxes, fw, fh);
    rois.moving = connected_components(accumulated, fw, fh);
    return rois;
}

}  // namespace roistream::roidet::serial
