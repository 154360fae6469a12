// Timing comparison of the serial reference kernels against the OpenMP
// pipeline, plus an allocator timing at the simulator's default scale.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "roistream/alloc.hpp"
#include "roistream/roidet.hpp"

using namespace roistream;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Noisy background with a bright square translating across the frame.
std::vector<roidet::FrameGray> make_segment(int width, int height, int frames, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> noise(96, 160);
    std::vector<roidet::FrameGray> out;
    for (int f = 0; f < frames; ++f) {
        roidet::FrameGray frame{width, height, {}};
        frame.data.resize(static_cast<std::size_t>(width) * height);
        for (auto& px : frame.data) px = static_cast<std::uint8_t>(noise(rng));
        int side = height / 6;
        int x0 = (f * width) / (frames + 2), y0 = height / 2 - side / 2;
        for (int y = y0; y < y0 + side; ++y)
            for (int x = x0; x < x0 + side && x < width; ++x) frame.at(x, y) = 250;
        out.push_back(std::move(frame));
    }
    return out;
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto start = Clock::now();
        fn();
        best = std::min(best, ms_since(start));
    }
    return best;
}

void bench_segment(int width, int height) {
    const roidet::RoidetParams params;
    auto frames = make_segment(width, height, 10, 7);

    double serial_ms = time_best_of(3, [&] { roidet::serial::roidet_segment(frames, {}, params); });
    double parallel_ms = time_best_of(3, [&] { roidet::roidet_segment(frames, {}, params); });
    std::printf("segment %4dx%-4d 10 frames   serial %8.2f ms   openmp %8.2f ms   speedup %.2fx\n", width,
                height, serial_ms, parallel_ms, serial_ms / parallel_ms);

    double canny_serial = time_best_of(3, [&] { roidet::serial::canny_edges(frames[0], params); });
    double canny_parallel = time_best_of(3, [&] { roidet::canny_edges(frames[0], params); });
    std::printf("canny   %4dx%-4d one frame   serial %8.2f ms   openmp %8.2f ms   speedup %.2fx\n", width,
                height, canny_serial, canny_parallel, canny_serial / canny_parallel);
}

void bench_allocator() {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<int> bitrates = {50, 100, 200, 400, 800, 1000};
    std::vector<int> resolutions = {0, 1, 2};
    std::vector<alloc::CameraOptions> cams(5);
    std::vector<double> weights = {0.84, 0.38, 1.92, 0.74, 0.45};
    for (std::size_t i = 0; i < cams.size(); ++i) {
        cams[i].camera_id = static_cast<int>(i);
        cams[i].weight = weights[i];
        cams[i].table.bitrates_kbps = bitrates;
        cams[i].table.resolutions = resolutions;
        for (std::size_t v = 0; v < bitrates.size() * resolutions.size(); ++v)
            cams[i].table.values.push_back(u01(rng));
    }
    const alloc::DpParams params{50};
    double ms = time_best_of(200, [&] { alloc::allocate_dp(cams, 2305.0, params); });
    std::printf("allocate_dp 5 cams, 6 bitrates, W=2305, d=50: %.4f ms\n", ms);

    // runtime should scale linearly in W/d
    for (double budget : {2000.0, 4000.0, 8000.0, 16000.0, 32000.0}) {
        double t = time_best_of(100, [&] { alloc::allocate_dp(cams, budget, params); });
        std::printf("allocate_dp W=%6.0f (W/d=%4.0f): %.4f ms\n", budget, budget / 50.0, t);
    }
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp\n");
#endif
    bench_segment(320, 240);
    bench_segment(1280, 720);
    bench_allocator();
    return 0;
}
