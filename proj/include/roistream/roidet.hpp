#pragma once

#include <vector>

#include "roistream/raster.hpp"

namespace roistream::roidet {

/// Canny edge detection: 5x5 Gaussian blur (sigma 1.4), Sobel gradients,
/// non-maximum suppression, double threshold with 8-connected hysteresis.
/// Thresholds are compared against the raw Sobel magnitude. Deterministic
/// for fixed input and params. Throws std::invalid_argument for frames
/// smaller than 16x16 or malformed params.
EdgeMap canny_edges(const FrameGray& frame, const RoidetParams& params);

/// Symmetric difference of two binary maps: bit is 1 where they disagree.
EdgeMap edge_difference(const EdgeMap& prev, const EdgeMap& cur);

/// Partition the difference map into block_rows x block_cols tiles and flag
/// a block when its count of set bits exceeds motion_threshold (strict >).
/// Remainder pixels go to the last block row/column.
BlockGrid block_motion(const EdgeMap& delta, const RoidetParams& params);

/// Elementwise OR over per-frame grids; all grids must share dimensions.
BlockGrid accumulate_motion(const std::vector<BlockGrid>& per_frame_grids);

/// One pixel-space bounding box per 8-connected component of set flags.
/// Block coordinates scale back to the pixel tiles they cover; boxes are
/// sorted by (y, x).
std::vector<BoundingBox> connected_components(const BlockGrid& grid, int frame_width, int frame_height);

/// Full per-segment detection: stationary boxes are clipped to the frame,
/// moving boxes come from the OR-accumulated motion grid of all consecutive
/// frame pairs. Requires at least two frames of identical dimensions.
RoiSet roidet_segment(const std::vector<FrameGray>& frames,
                      const std::vector<BoundingBox>& stationary_boxes,
                      const RoidetParams& params);

/// Area of the union of all boxes (stationary and moving, overlap counted
/// once) divided by the frame area.
double roi_area_ratio(const RoiSet& rois);

/// Serial reference implementations of the raster kernels. Kept for exact
/// equivalence tests against the OpenMP versions and for benchmarking.
namespace serial {

EdgeMap canny_edges(const FrameGray& frame, const RoidetParams& params);
EdgeMap edge_difference(const EdgeMap& prev, const EdgeMap& cur);
BlockGrid block_motion(const EdgeMap& delta, const RoidetParams& params);
RoiSet roidet_segment(const std::vector<FrameGray>& frames,
                      const std::vector<BoundingBox>& stationary_boxes,
                      const RoidetParams& params);

}  // namespace serial

}  // namespace roistream::roidet
