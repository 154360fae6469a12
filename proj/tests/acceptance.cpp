// Acceptance suite: every release gate in one binary, one line per check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "roistream/alloc.hpp"
#include "roistream/elastic.hpp"
#include "roistream/io.hpp"
#include "roistream/roidet.hpp"
#include "roistream/sim.hpp"
#include "roistream/utility.hpp"
#include "support/oracles.hpp"

using namespace roistream;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %-28s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fmt(double v) { return io::format_double(v); }

// --- 1. DP optimality against exhaustive search ---------------------------

alloc::CameraOptions random_camera(int id, std::mt19937& rng) {
    std::uniform_int_distribution<int> nb(1, 6), nr(1, 3);
    std::uniform_real_distribution<double> u01(0.0, 1.0), uw(0.0, 2.0);
    static const std::vector<int> pool = {50, 100, 150, 200, 300, 400, 500, 800, 1000};
    alloc::CameraOptions cam;
    cam.camera_id = id;
    cam.weight = uw(rng);
    int n_bitrates = nb(rng), n_res = nr(rng);
    std::size_t start = rng() % (pool.size() - n_bitrates + 1);
    for (int i = 0; i < n_bitrates; ++i) cam.table.bitrates_kbps.push_back(pool[start + i]);
    for (int i = 0; i < n_res; ++i) cam.table.resolutions.push_back(i);
    for (int i = 0; i < n_bitrates * n_res; ++i) cam.table.values.push_back(u01(rng));
    return cam;
}

void criterion_dp_optimality() {
    auto start = Clock::now();
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> ncams(1, 5);
    std::uniform_real_distribution<double> ubudget(0.0, 2000.0);
    int mismatches = 0;
    const int instances = 200;
    for (int it = 0; it < instances; ++it) {
        std::vector<alloc::CameraOptions> cams;
        int n = ncams(rng);
        for (int i = 0; i < n; ++i) cams.push_back(random_camera(i, rng));
        double budget = ubudget(rng);
        alloc::AllocationDecision d = alloc::allocate_dp(cams, budget, {alloc::compute_quantum(cams)});
        auto best = oracles::brute_force_allocate(cams, budget);
        if (d.total_utility != best.utility || d.total_bitrate_kbps > budget) ++mismatches;
    }
    double elapsed = ms_since(start);
    report(1, "DP optimality", mismatches == 0 && elapsed < 5000.0,
           std::to_string(instances) + " instances, " + std::to_string(mismatches) + " mismatches, " +
               fmt(elapsed) + " ms");
}

// --- 2. DP runtime at the reference scale ---------------------------------

void criterion_dp_runtime() {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<alloc::CameraOptions> cams(5);
    const std::vector<double> weights = {0.84, 0.38, 1.92, 0.74, 0.45};
    for (int i = 0; i < 5; ++i) {
        cams[i].camera_id = i;
        cams[i].weight = weights[i];
        cams[i].table.bitrates_kbps = {50, 100, 200, 400, 800, 1000};
        cams[i].table.resolutions = {0, 1, 2};
        for (int v = 0; v < 18; ++v) cams[i].table.values.push_back(u01(rng));
    }
    std::vector<double> times;
    for (int rep = 0; rep < 51; ++rep) {
        auto start = Clock::now();
        alloc::allocate_dp(cams, 2305.0, {50});
        times.push_back(ms_since(start));
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    report(2, "DP runtime", median < 1.0, "median " + fmt(median) + " ms (budget 1 ms)");
}

// --- 3/4. utility model ----------------------------------------------------

double law(double a, double b) { return std::min(1.0, 0.3 + 0.5 * b / 1000.0 - 0.2 * a); }

std::vector<utility::ProfilingSample> law_samples(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0), ub(50.0, 1000.0);
    std::uniform_int_distribution<int> ur(0, 2);
    std::vector<utility::ProfilingSample> out;
    for (int i = 0; i < n; ++i) {
        utility::ProfilingSample s;
        s.a = u01(rng);
        s.c = u01(rng);
        s.bitrate_kbps = ub(rng);
        s.resolution = ur(rng);
        s.accuracy = law(s.a, s.bitrate_kbps);
        out.push_back(s);
    }
    return out;
}

void criterion_gradient_check() {
    double worst = 0.0;
    for (unsigned seed = 1; seed <= 20; ++seed) {
        utility::TrainConfig cfg;
        cfg.hidden_size = 1 + static_cast<int>(seed % 8);
        cfg.epochs = 1 + static_cast<int>(seed % 5);
        cfg.seed = seed;
        auto samples = law_samples(5, seed * 131);
        utility::UtilityModel model = utility::train_utility(samples, cfg);
        worst = std::max(worst, utility::gradient_check(model, samples));
    }
    report(3, "gradient check", worst < 1e-4, "max relative error " + fmt(worst) + " over 20 seeds");
}

void criterion_regression_fidelity() {
    auto start = Clock::now();
    utility::TrainConfig cfg;  // default config is the contract here
    utility::UtilityModel model = utility::train_utility(law_samples(200, 7), cfg);
    auto held_out = law_samples(200, 999);
    double se = 0.0;
    for (const auto& s : held_out) {
        double d = utility::predict_accuracy(model, s.a, s.c, s.bitrate_kbps, s.resolution) - s.accuracy;
        se += d * d;
    }
    double rmse = std::sqrt(se / held_out.size());
    double elapsed = ms_since(start);
    report(4, "regression fidelity", rmse < 0.05 && elapsed < 10000.0,
           "held-out RMSE " + fmt(rmse) + ", " + fmt(elapsed) + " ms");
}

// --- 5. connected components vs flood fill --------------------------------

void criterion_ccl_oracle() {
    std::mt19937 rng(401);
    int mismatches = 0;
    const int grids = 1000;
    for (int it = 0; it < grids; ++it) {
        std::uniform_int_distribution<int> dim(1, 16);
        int rows = dim(rng), cols = dim(rng);
        std::uniform_real_distribution<double> dens(0.05, 0.9);
        std::bernoulli_distribution bit(dens(rng));
        roidet::BlockGrid grid{rows, cols, {}};
        grid.flags.resize(static_cast<std::size_t>(rows) * cols);
        for (auto& v : grid.flags) v = bit(rng);

        auto boxes = roidet::connected_components(grid, cols * 4, rows * 4);
        auto extents = oracles::flood_fill_components(grid);
        if (boxes.size() != extents.size()) {
            ++mismatches;
            continue;
        }
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            roidet::BoundingBox want{extents[i].c0 * 4, extents[i].r0 * 4,
                                     (extents[i].c1 - extents[i].c0 + 1) * 4,
                                     (extents[i].r1 - extents[i].r0 + 1) * 4};
            if (!(boxes[i] == want)) {
                ++mismatches;
                break;
            }
        }
    }
    report(5, "CCL oracle equivalence", mismatches == 0,
           std::to_string(grids) + " grids, " + std::to_string(mismatches) + " mismatches");
}

// --- 6. ROI detection end to end -------------------------------------------

void criterion_roidet_end_to_end() {
    roidet::RoidetParams params;
    params.motion_threshold = 4;  // 8px square straddles block rows at 320x240
    std::vector<roidet::FrameGray> frames;
    const int side = 8, step = 4, n = 10;
    for (int f = 0; f < n; ++f) {
        roidet::FrameGray frame{320, 240, std::vector<std::uint8_t>(320 * 240, 16)};
        for (int y = 116; y < 116 + side; ++y)
            for (int x = 60 + f * step; x < 60 + f * step + side; ++x) frame.at(x, y) = 240;
        frames.push_back(std::move(frame));
    }

    double best_ms = 1e300;
    roidet::RoiSet rois;
    for (int rep = 0; rep < 3; ++rep) {
        auto start = Clock::now();
        rois = roidet::roidet_segment(frames, {}, params);
        best_ms = std::min(best_ms, ms_since(start));
    }

    const int sx0 = 60, sx1 = 60 + (n - 1) * step + side, sy0 = 116, sy1 = 116 + side;
    int covered = 0;
    for (int y = sy0; y < sy1; ++y)
        for (int x = sx0; x < sx1; ++x)
            for (const roidet::BoundingBox& b : rois.moving)
                if (x >= b.x && x < b.x + b.w && y >= b.y && y < b.y + b.h) {
                    ++covered;
                    break;
                }
    const double sweep_area = static_cast<double>((sx1 - sx0) * (sy1 - sy0));
    double coverage = covered / sweep_area;

    roidet::RoiSet moving_only;
    moving_only.frame_width = 320;
    moving_only.frame_height = 240;
    moving_only.moving = rois.moving;
    double union_area = roidet::roi_area_ratio(moving_only) * 320.0 * 240.0;

    report(6, "ROIDet end-to-end",
           coverage >= 0.95 && union_area <= 3.0 * sweep_area && best_ms < 100.0,
           "coverage " + fmt(coverage) + ", union/sweep " + fmt(union_area / sweep_area) + ", " +
               fmt(best_ms) + " ms");
}

// --- 7. elastic budget safety ----------------------------------------------

void criterion_elastic_budget() {
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> ua(0.0, 3.0), uw(50.0, 3000.0);
    elastic::ElasticConfig cfg;
    cfg.alpha = 0.3;
    cfg.gamma_a = 0.5;
    cfg.budget_cap_kbit = 800.0;
    elastic::ElasticState s;
    s.tau_wl = 1500.0;
    s.tau_wh = 2200.0;
    bool in_range = true;
    double signed_sum = 0.0;
    for (int slot = 0; slot < 10000; ++slot) {
        double a = ua(rng), w = uw(rng);
        s = elastic::ema_update(s, a, cfg);
        auto [d, next] = elastic::elastic_adjust(s, a, w, cfg);
        s = next;
        signed_sum += d;
        in_range = in_range && s.budget_used_kbit >= 0.0 && s.budget_used_kbit <= cfg.budget_cap_kbit;
    }
    double drift = std::fabs(signed_sum - s.budget_used_kbit);
    report(7, "elastic budget safety", in_range && drift < 1e-9,
           "10000 slots, conservation drift " + fmt(drift));
}

// --- 8. elastic no-op -------------------------------------------------------

void criterion_elastic_noop() {
    sim::Scenario sc = sim::generate_synthetic_scenario(77, 5, 120);
    sim::BandwidthTrace trace = sim::generate_trace(77, sim::TraceProfile::low, 120);
    sim::SimConfig cfg;
    cfg.horizon = 120;
    cfg.oracle_model = true;
    cfg.weights.assign(5, 1.0);

    cfg.scheduler = sim::SchedulerKind::dp;
    sim::SimReport dp = sim::run_simulation(cfg, trace, sc, {}, elastic::ElasticConfig{});

    elastic::ElasticConfig zero;
    zero.gamma_wl = 0.0;
    zero.gamma_wh = 0.0;
    cfg.scheduler = sim::SchedulerKind::dp_elastic;
    sim::SimReport noop = sim::run_simulation(cfg, trace, sc, {}, zero);

    bool identical = sim::slot_records_csv(noop) == sim::slot_records_csv(dp) &&
                     noop.mean_utility == dp.mean_utility &&
                     noop.mean_total_bitrate_kbps == dp.mean_total_bitrate_kbps;
    report(8, "elastic no-op", identical, "gamma=0 slot records match the dp run bitwise");
}

// --- 9/10. scheduler matrix -------------------------------------------------

void criteria_scheduler_matrix() {
    const std::vector<double> weight_set2 = {0.84, 0.38, 1.92, 0.74, 0.45};
    const int seeds = 20, horizon = 120;
    int dominance_violations = 0, strict_medium = 0;
    double gap_low = 0.0, gap_high = 0.0;
    std::vector<std::string> per_seed;

    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        sim::Scenario sc = sim::generate_synthetic_scenario(seed, 5, horizon);
        double seed_gaps[3] = {0.0, 0.0, 0.0};
        for (int p = 0; p < 3; ++p) {
            sim::BandwidthTrace trace =
                sim::generate_trace(seed, static_cast<sim::TraceProfile>(p), horizon);
            sim::SimConfig cfg;
            cfg.horizon = horizon;
            cfg.oracle_model = true;
            cfg.weights = weight_set2;
            auto reports = sim::compare_schedulers(cfg, trace, sc, {}, elastic::ElasticConfig{});
            double dp = reports[0].mean_utility, dpe = reports[1].mean_utility;
            double fair = reports[2].mean_utility, agnostic = reports[3].mean_utility;
            if (!(dp >= fair && dp >= agnostic)) ++dominance_violations;
            if (p == 1 && dp > fair && dp > agnostic) ++strict_medium;
            seed_gaps[p] = dpe - fair;
        }
        gap_low += seed_gaps[0];
        gap_high += seed_gaps[2];
        per_seed.push_back("    seed " + std::to_string(seed) + ": gap_low " + fmt(seed_gaps[0]) +
                           ", gap_medium " + fmt(seed_gaps[1]) + ", gap_high " + fmt(seed_gaps[2]));
    }
    gap_low /= seeds;
    gap_high /= seeds;

    report(9, "scheduler dominance", dominance_violations == 0 && strict_medium >= 15,
           "violations " + std::to_string(dominance_violations) + ", strict on medium " +
               std::to_string(strict_medium) + "/20");
    for (const std::string& line : per_seed) std::printf("%s\n", line.c_str());
    report(10, "low-bandwidth trend", gap_low > gap_high,
           "mean gap low " + fmt(gap_low) + " > high " + fmt(gap_high));
}

// --- 11. trace generator moments --------------------------------------------

void criterion_trace_moments() {
    struct Target {
        sim::TraceProfile profile;
        double mean, stddev;
    };
    const Target targets[] = {{sim::TraceProfile::low, 521.0, 230.0},
                              {sim::TraceProfile::medium, 1134.0, 499.0},
                              {sim::TraceProfile::high, 2305.0, 1397.0}};
    bool ok = true;
    std::string detail;
    for (const Target& t : targets) {
        for (int horizon : {120, 240}) {
            for (std::uint64_t seed : {1ull, 5ull, 9ull}) {
                sim::BandwidthTrace trace = sim::generate_trace(seed, t.profile, horizon);
                double m = 0.0;
                for (double v : trace.kbps) m += v;
                m /= horizon;
                double var = 0.0;
                for (double v : trace.kbps) var += (v - m) * (v - m);
                double s = std::sqrt(var / (horizon - 1));
                ok = ok && std::fabs(m - t.mean) <= 0.1 * t.mean && std::fabs(s - t.stddev) <= 0.1 * t.stddev;
            }
        }
        sim::BandwidthTrace sample = sim::generate_trace(1, t.profile, 120);
        double m = 0.0;
        for (double v : sample.kbps) m += v;
        detail += sample.name + " mean " + fmt(m / 120.0) + "  ";
    }
    report(11, "trace moments", ok, detail + "(targets 521/1134/2305 +-10%)");
}

// --- 12. CLI determinism -----------------------------------------------------

void criterion_cli_determinism() {
    namespace fs = std::filesystem;
    const char* bin = std::getenv("ROISTREAM_BIN");
    if (!bin) {
        report(12, "compare determinism", false, "ROISTREAM_BIN not set");
        return;
    }
    fs::path tmp = fs::temp_directory_path() / "roistream_acceptance";
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    {
        std::string config = R"({"cameras": 5, "horizon": 60, "seed": 12, "oracle_model": true,
                                 "weights": [0.84, 0.38, 1.92, 0.74, 0.45]})";
        io::atomic_write(tmp / "config.json", config);
    }
    auto run_once = [&](const std::string& out) {
        std::string cmd = std::string(bin) + " compare --config " + (tmp / "config.json").string() +
                          " --trace profile:medium --scenario synthetic:12 --out " + (tmp / out).string() +
                          " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    bool ok = run_once("a") && run_once("b");
    int compared = 0;
    if (ok) {
        for (const auto& entry : fs::directory_iterator(tmp / "a")) {
            std::string name = entry.path().filename().string();
            if (io::read_file(entry.path()) != io::read_file(tmp / "b" / name)) ok = false;
            ++compared;
        }
        ok = ok && compared > 0;
    }
    report(12, "compare determinism", ok,
           "two runs, " + std::to_string(compared) + " output files byte-compared");
    fs::remove_all(tmp);
}

}  // namespace

int main() {
    criterion_dp_optimality();
    criterion_dp_runtime();
    criterion_gradient_check();
    criterion_regression_fidelity();
    criterion_ccl_oracle();
    criterion_roidet_end_to_end();
    criterion_elastic_budget();
    criterion_elastic_noop();
    criteria_scheduler_matrix();
    criterion_trace_moments();
    criterion_cli_determinism();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    else std::printf("all acceptance criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
