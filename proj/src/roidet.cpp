#include "roistream/roidet.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "roidet_detail.hpp"

namespace roistream::roidet {

namespace detail {

void validate_frame(const FrameGray& f) {
    if (f.width < 16 || f.height < 16)
        throw std::invalid_argument("frame dimensions must be at least 16x16");
    if (f.data.size() != static_cast<std::size_t>(f.width) * f.height)
        throw std::invalid_argument("frame data length does not match dimensions");
}

void validate_params(const RoidetParams& p) {
    if (!(p.canny_low < p.canny_high))
        throw std::invalid_argument("canny_low must be below canny_high");
    if (p.block_rows < 1 || p.block_cols < 1)
        throw std::invalid_argument("block grid must be at least 1x1");
    if (p.motion_threshold < 1)
        throw std::invalid_argument("motion_threshold must be >= 1");
}

EdgeMap hysteresis(const std::vector<double>& nms, int w, int h, double low, double high) {
    EdgeMap out{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
    std::vector<std::uint8_t> weak(static_cast<std::size_t>(w) * h, 0);
    std::queue<int> frontier;
    for (int i = 0; i < w * h; ++i) {
        if (nms[i] >= high) {
            out.bits[i] = 1;
            frontier.push(i);
        } else if (nms[i] >= low) {
            weak[i] = 1;
        }
    }
    while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop();
        int x = i % w, y = i / w;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                int xx = x + dx, yy = y + dy;
                if (xx < 0 || xx >= w || yy < 0 || yy >= h) continue;
                int j = yy * w + xx;
                if (weak[j] && !out.bits[j]) {
                    out.bits[j] = 1;
                    frontier.push(j);
                }
            }
        }
    }
    return out;
}

}  // namespace detail

EdgeMap canny_edges(const FrameGray& frame, const RoidetParams& params) {
    detail::validate_frame(frame);
    detail::validate_params(params);
    const int w = frame.width, h = frame.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;

    std::vector<double> blurred(n);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            blurred[static_cast<std::size_t>(y) * w + x] = detail::blur_at(frame.data.data(), w, h, x, y);

    std::vector<double> mag(n, 0.0);
    std::vector<std::uint8_t> bin(n, 0);
#pragma omp parallel for schedule(static)
    for (int y = 1; y < h - 1; ++y)
        for (int x = 1; x < w - 1; ++x)
            detail::sobel_at(blurred.data(), w, x, y, mag[static_cast<std::size_t>(y) * w + x],
                             bin[static_cast<std::size_t>(y) * w + x]);

    std::vector<double> nms(n, 0.0);
#pragma omp parallel for schedule(static)
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
    const std::int64_t n = static_cast<std::int64_t>(prev.bits.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out.bits[i] = prev.bits[i] ^ cur.bits[i];
    return out;
}

namespace {

struct BlockSpan {
    int x0, x1, y0, y1;  // half-open pixel ranges of block (row, col)
};

BlockSpan block_span(int rows, int cols, int w, int h, int row, int col) {
    int bh = h / rows, bw = w / cols;
    BlockSpan s;
    s.x0 = col * bw;
    s.x1 = (col == cols - 1) ? w : (col + 1) * bw;
    s.y0 = row * bh;
    s.y1 = (row == rows - 1) ? h : (row + 1) * bh;
    return s;
}

}  // namespace

BlockGrid block_motion(const EdgeMap& delta, const RoidetParams& params) {
    detail::validate_params(params);
    const int rows = params.block_rows, cols = params.block_cols;
    if (rows > delta.height || cols > delta.width)
        throw std::invalid_argument("block grid exceeds raster dimensions");
    BlockGrid grid{rows, cols, std::vector<std::uint8_t>(static_cast<std::size_t>(rows) * cols, 0)};
#pragma omp parallel for schedule(static)
    for (int b = 0; b < rows * cols; ++b) {
        BlockSpan s = block_span(rows, cols, delta.width, delta.height, b / cols, b % cols);
        int count = 0;
        for (int y = s.y0; y < s.y1; ++y)
            for (int x = s.x0; x < s.x1; ++x) count += delta.bits[static_cast<std::size_t>(y) * delta.width + x];
        grid.flags[b] = count > params.motion_threshold ? 1 : 0;
    }
    return grid;
}

BlockGrid accumulate_motion(const std::vector<BlockGrid>& per_frame_grids) {
    if (per_frame_grids.empty()) throw std::invalid_argument("no grids to accumulate");
    BlockGrid out = per_frame_grids.front();
    for (std::size_t g = 1; g < per_frame_grids.size(); ++g) {
        const BlockGrid& grid = per_frame_grids[g];
        if (grid.rows != out.rows || grid.cols != out.cols)
            throw std::invalid_argument("grid dimensions differ");
        for (std::size_t i = 0; i < out.flags.size(); ++i) out.flags[i] |= grid.flags[i];
    }
    return out;
}

namespace {

int uf_find(std::vector<int>& parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void uf_union(std::vector<int>& parent, int a, int b) {
    a = uf_find(parent, a);
    b = uf_find(parent, b);
    if (a < b) parent[b] = a;
    else parent[a] = b;
}

}  // namespace

std::vector<BoundingBox> connected_components(const BlockGrid& grid, int frame_width, int frame_height) {
    const int rows = grid.rows, cols = grid.cols;
    if (rows < 1 || cols < 1 || grid.flags.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("malformed block grid");
    if (frame_width < cols || frame_height < rows)
        throw std::invalid_argument("frame smaller than block grid");

    // Two-pass labeling with union-find, 8-connectivity.
    std::vector<int> parent(static_cast<std::size_t>(rows) * cols);
    std::iota(parent.begin(), parent.end(), 0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!grid.at(r, c)) continue;
            int i = r * cols + c;
            if (c > 0 && grid.at(r, c - 1)) uf_union(parent, i, i - 1);
            if (r > 0) {
                if (grid.at(r - 1, c)) uf_union(parent, i, i - cols);
                if (c > 0 && grid.at(r - 1, c - 1)) uf_union(parent, i, i - cols - 1);
                if (c + 1 < cols && grid.at(r - 1, c + 1)) uf_union(parent, i, i - cols + 1);
            }
        }
    }

    struct Extent {
        int r0, r1, c0, c1;
    };
    std::vector<Extent> extents(parent.size(), {rows, -1, cols, -1});
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (!grid.at(r, c)) continue;
            int root = uf_find(parent, r * cols + c);
            Extent& e = extents[root];
            e.r0 = std::min(e.r0, r);
            e.r1 = std::max(e.r1, r);
            e.c0 = std::min(e.c0, c);
            e.c1 = std::max(e.c1, c);
        }
    }

    std::vector<BoundingBox> boxes;
    for (const Extent& e : extents) {
        if (e.r1 < 0) continue;
        BlockSpan lo = block_span(rows, cols, frame_width, frame_height, e.r0, e.c0);
        BlockSpan hi = block_span(rows, cols, frame_width, frame_height, e.r1, e.c1);
        boxes.push_back({lo.x0, lo.y0, hi.x1 - lo.x0, hi.y1 - lo.y0});
    }
    std::sort(boxes.begin(), boxes.end(), [](const BoundingBox& a, const BoundingBox& b) {
        return std::tie(a.y, a.x, a.h, a.w) < std::tie(b.y, b.x, b.h, b.w);
    });
    return boxes;
}

namespace detail {

std::vector<BoundingBox> clip_boxes(const std::vector<BoundingBox>& boxes, int fw, int fh) {
    std::vector<BoundingBox> out;
    for (const BoundingBox& b : boxes) {
        int x0 = std::max(b.x, 0), y0 = std::max(b.y, 0);
        int x1 = std::min(b.x + b.w, fw), y1 = std::min(b.y + b.h, fh);
        if (x1 > x0 && y1 > y0) out.push_back({x0, y0, x1 - x0, y1 - y0});
    }
    return out;
}

void validate_segment(const std::vector<FrameGray>& frames) {
    if (frames.size() < 2) throw std::invalid_argument("segment needs at least two frames");
    validate_frame(frames.front());
    for (const FrameGray& f : frames) {
        if (f.width != frames.front().width || f.height != frames.front().height)
            throw std::invalid_argument("frame dimensions differ within segment");
        validate_frame(f);
    }
}

}  // namespace detail

RoiSet roidet_segment(const std::vector<FrameGray>& frames,
                      const std::vector<BoundingBox>& stationary_boxes,
                      const RoidetParams& params) {
    detail::validate_segment(frames);
    detail::validate_params(params);
    const int fw = frames.front().width, fh = frames.front().height;
    const int n = static_cast<int>(frames.size());

    std::vector<EdgeMap> edges(n);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) edges[i] = canny_edges(frames[i], params);

    std::vector<BlockGrid> grids(n - 1);
#pragma omp parallel for schedule(dynamic)
    for (int i = 1; i < n; ++i) grids[i - 1] = block_motion(edge_difference(edges[i - 1], edges[i]), params);

    BlockGrid accumulated = accumulate_motion(grids);

    RoiSet rois;
    rois.frame_width = fw;
    rois.frame_height = fh;
    rois.stationary = detail::clip_boxes(stationary_boxes, fw, fh);
    rois.moving = connected_components(accumulated, fw, fh);
    return rois;
}

double roi_area_ratio(const RoiSet& rois) {
    if (rois.frame_width <= 0 || rois.frame_height <= 0)
        throw std::invalid_argument("roi set has no frame dimensions");
    std::vector<BoundingBox> boxes = rois.stationary;
    boxes.insert(boxes.end(), rois.moving.begin(), rois.moving.end());
    if (boxes.empty()) return 0.0;

    // Union area by sweeping compressed x slabs.
    std::vector<int> xs;
    xs.reserve(boxes.size() * 2);
    for (const BoundingBox& b : boxes) {
        xs.push_back(b.x);
        xs.push_back(b.x + b.w);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    std::int64_t area = 0;
    std::vector<std::pair<int, int>> spans;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        int x0 = xs[i], x1 = xs[i + 1];
        spans.clear();
        for (const BoundingBox& b : boxes)
            if (b.x <= x0 && b.x + b.w >= x1) spans.emplace_back(b.y, b.y + b.h);
        if (spans.empty()) continue;
        std::sort(spans.begin(), spans.end());
        std::int64_t covered = 0;
        int cur_lo = spans[0].first, cur_hi = spans[0].second;
        for (const auto& [lo, hi] : spans) {
            if (lo > cur_hi) {
                covered += cur_hi - cur_lo;
                cur_lo = lo;
                cur_hi = hi;
            } else {
                cur_hi = std::max(cur_hi, hi);
            }
        }
        covered += cur_hi - cur_lo;
        area += covered * (x1 - x0);
    }
    return static_cast<double>(area) /
           (static_cast<double>(rois.frame_width) * static_cast<double>(rois.frame_height));
}

}  // namespace roistream::roidet
