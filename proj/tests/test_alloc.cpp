#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "roistream/alloc.hpp"
#include "support/oracles.hpp"

using namespace roistream::alloc;
using roistream::utility::UtilityTable;

namespace {

CameraOptions make_camera(int id, double weight, const std::vector<int>& bitrates,
                          const std::vector<int>& resolutions, const std::vector<double>& values) {
    CameraOptions cam;
    cam.camera_id = id;
    cam.weight = weight;
    cam.table.bitrates_kbps = bitrates;
    cam.table.resolutions = resolutions;
    cam.table.values = values;
    return cam;
}

CameraOptions random_camera(int id, std::mt19937& rng, int max_bitrates = 6, int max_resolutions = 3) {
    std::uniform_int_distribution<int> nb(1, max_bitrates), nr(1, max_resolutions);
    std::uniform_real_distribution<double> u01(0.0, 1.0), uw(0.0, 2.0);
    int n_bitrates = nb(rng), n_res = nr(rng);
    static const std::vector<int> pool = {50, 100, 150, 200, 300, 400, 500, 800, 1000};
    std::vector<int> bitrates;
    std::size_t start = rng() % (pool.size() - n_bitrates + 1);
    for (int i = 0; i < n_bitrates; ++i) bitrates.push_back(pool[start + i]);
    std::vector<int> resolutions;
    for (int i = 0; i < n_res; ++i) resolutions.push_back(i);
    std::vector<double> values;
    for (int i = 0; i < n_bitrates * n_res; ++i) values.push_back(u01(rng));
    return make_camera(id, uw(rng), bitrates, resolutions, values);
}

}  // namespace

TEST_CASE("best_config_per_bitrate: argmax per row with low-index ties") {
    CameraOptions single = make_camera(0, 1.0, {200}, {1}, {0.6});
    auto curve = best_config_per_bitrate(single);
    REQUIRE(curve.size() == 1);
    CHECK(curve[0].bitrate_kbps == 200);
    CHECK(curve[0].resolution == 1);
    CHECK(curve[0].accuracy == 0.6);

    // resolution 2 dominates every bitrate
    CameraOptions dominated = make_camera(0, 1.0, {100, 200}, {0, 1, 2},
                                          {0.1, 0.2, 0.5,   //
                                           0.3, 0.4, 0.7});
    for (const auto& choice : best_config_per_bitrate(dominated)) CHECK(choice.resolution == 2);

    // exhaustive row-scan oracle on random tables, ties to the lowest index
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        std::vector<double> values;
        for (int i = 0; i < 12; ++i) values.push_back(u01(rng) < 0.2 ? 0.5 : u01(rng));
        CameraOptions cam = make_camera(0, 1.0, {50, 100, 200, 400}, {0, 1, 2}, values);
        auto curve = best_config_per_bitrate(cam);
        for (int bi = 0; bi < 4; ++bi) {
            int best = 0;
            for (int ri = 1; ri < 3; ++ri)
                if (cam.table.at(bi, ri) > cam.table.at(bi, best)) best = ri;
            CHECK(curve[bi].resolution == best);
            CHECK(curve[bi].accuracy == cam.table.at(bi, best));
        }
    }
}

TEST_CASE("compute_quantum: gcd over all options") {
    std::vector<double> v6(6, 0.5), v1(1, 0.5), v2(2, 0.5);
    CHECK(compute_quantum({make_camera(0, 1, {50, 100, 200, 400, 800, 1000}, {0}, v6)}) == 50);
    CHECK(compute_quantum({make_camera(0, 1, {300}, {0}, v1)}) == 300);
    CHECK(compute_quantum({make_camera(0, 1, {60, 90}, {0}, v2)}) == 30);
    CHECK(compute_quantum({make_camera(0, 1, {60}, {0}, v1), make_camera(1, 1, {90}, {0}, v1)}) == 30);
    CHECK_THROWS_AS(compute_quantum({}), std::invalid_argument);
}

TEST_CASE("allocate_dp: unconstrained picks the global best pair") {
    CameraOptions cam = make_camera(0, 1.0, {100, 200, 400}, {0, 1},
                                    {0.2, 0.3,   //
                                     0.5, 0.45,  //
                                     0.55, 0.8});
    AllocationDecision d = allocate_dp({cam}, 5000.0, {100});
    CHECK(d.cameras[0].bitrate_kbps == 400);
    CHECK(d.cameras[0].resolution == 1);
    CHECK(d.total_utility == 0.8);
    CHECK(d.total_bitrate_kbps == 400.0);
}

TEST_CASE("allocate_dp: zero budget yields the all-zero allocation") {
    std::mt19937 rng(5);
    std::vector<CameraOptions> cams;
    for (int i = 0; i < 3; ++i) cams.push_back(random_camera(i, rng));
    AllocationDecision d = allocate_dp(cams, 0.0, {compute_quantum(cams)});
    CHECK(d.total_utility == 0.0);
    CHECK(d.total_bitrate_kbps == 0.0);
    for (const auto& ch : d.cameras) {
        CHECK(ch.bitrate_kbps == 0);
        CHECK(ch.resolution == -1);
    }
}

TEST_CASE("allocate_dp: equals brute force on random instances") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ubudget(0.0, 2000.0);
    std::uniform_int_distribution<int> ncams(1, 5);
    for (int it = 0; it < 200; ++it) {
        std::vector<CameraOptions> cams;
        int n = ncams(rng);
        for (int i = 0; i < n; ++i) cams.push_back(random_camera(i, rng));
        double budget = it == 0 ? 600.0 : ubudget(rng);
        AllocationDecision d = allocate_dp(cams, budget, {compute_quantum(cams)});
        auto best = oracles::brute_force_allocate(cams, budget);
        CHECK(d.total_utility == best.utility);  // exact float equality
        CHECK(d.total_bitrate_kbps == static_cast<double>(best.total_bitrate));
        CHECK(d.total_bitrate_kbps <= budget);
    }
}

TEST_CASE("allocate_dp: high-weight camera wins the top bitrate when its marginal gain dominates") {
    // five cameras, one weight far above the rest, steepest utility curve on it
    const std::vector<double> weights = {0.84, 0.38, 1.92, 0.74, 0.45};
    const std::vector<int> bitrates = {50, 100, 200, 400, 800, 1000};
    std::vector<CameraOptions> cams;
    for (int i = 0; i < 5; ++i) {
        std::vector<double> values;
        for (int bi = 0; bi < 6; ++bi) {
            double saturation = static_cast<double>(bitrates[bi]) / 1000.0;
            values.push_back(i == 2 ? 0.2 + 0.75 * saturation : 0.3 + 0.3 * saturation);
        }
        cams.push_back(make_camera(i, weights[i], bitrates, {0}, values));
    }
    AllocationDecision d = allocate_dp(cams, 1134.0, {50});
    auto best = oracles::brute_force_allocate(cams, 1134.0);
    CHECK(d.total_utility == best.utility);
    for (int i = 0; i < 5; ++i) CHECK(d.cameras[2].bitrate_kbps >= d.cameras[i].bitrate_kbps);
}

TEST_CASE("allocate_dp: utility is monotone in the budget and bounded by it") {
    std::mt19937 rng(19);
    for (int it = 0; it < 20; ++it) {
        std::vector<CameraOptions> cams;
        for (int i = 0; i < 3; ++i) cams.push_back(random_camera(i, rng));
        DpParams params{compute_quantum(cams)};
        double prev = -1.0;
        for (double budget = 0.0; budget <= 1500.0; budget += 125.0) {
            AllocationDecision d = allocate_dp(cams, budget, params);
            CHECK(d.total_utility >= prev);
            CHECK(d.total_bitrate_kbps <= budget);
            prev = d.total_utility;
        }
    }
}

TEST_CASE("allocate_dp: scaling all weights keeps the assignment") {
    std::mt19937 rng(23);
    for (int it = 0; it < 50; ++it) {
        std::vector<CameraOptions> cams;
        for (int i = 0; i < 4; ++i) cams.push_back(random_camera(i, rng));
        DpParams params{compute_quantum(cams)};
        std::uniform_real_distribution<double> ubudget(0.0, 1200.0);
        double budget = ubudget(rng);
        AllocationDecision base = allocate_dp(cams, budget, params);
        for (double scale : {2.0, 0.5, 3.0}) {
            std::vector<CameraOptions> scaled = cams;
            for (auto& cam : scaled) cam.weight *= scale;
            AllocationDecision d = allocate_dp(scaled, budget, params);
            for (std::size_t i = 0; i < cams.size(); ++i) {
                CHECK(d.cameras[i].bitrate_kbps == base.cameras[i].bitrate_kbps);
                CHECK(d.cameras[i].resolution == base.cameras[i].resolution);
            }
        }
    }
}

TEST_CASE("allocate_dp: rejects a quantum that does not divide the options") {
    CameraOptions cam = make_camera(0, 1.0, {50, 120}, {0}, {0.1, 0.9});
    CHECK_THROWS_AS(allocate_dp({cam}, 500.0, {50}), std::invalid_argument);
    CHECK_THROWS_AS(allocate_dp({cam}, 500.0, {0}), std::invalid_argument);
}

TEST_CASE("allocate_fair: floor-share semantics") {
    std::vector<double> v = {0.4, 0.7};
    std::vector<CameraOptions> two = {make_camera(0, 1, {50, 100}, {0}, v),
                                      make_camera(1, 1, {50, 100}, {0}, v)};

    AllocationDecision d200 = allocate_fair(two, 200.0);
    CHECK(d200.cameras[0].bitrate_kbps == 100);
    CHECK(d200.cameras[1].bitrate_kbps == 100);

    // share = 40 kbps, below every option: strict floor gives the sentinel
    AllocationDecision d80 = allocate_fair(two, 80.0);
    CHECK(d80.cameras[0].bitrate_kbps == 0);
    CHECK(d80.cameras[1].bitrate_kbps == 0);
    CHECK(d80.total_utility == 0.0);

    AllocationDecision dbig = allocate_fair(two, 1e9);
    CHECK(dbig.cameras[0].bitrate_kbps == 100);
    CHECK(dbig.cameras[1].bitrate_kbps == 100);

    std::mt19937 rng(31);
    for (int it = 0; it < 50; ++it) {
        std::vector<CameraOptions> cams;
        for (int i = 0; i < 4; ++i) cams.push_back(random_camera(i, rng));
        std::uniform_real_distribution<double> ubudget(0.0, 1500.0);
        double budget = ubudget(rng);
        AllocationDecision d = allocate_fair(cams, budget);
        CHECK(d.total_bitrate_kbps <= budget);
    }
}

TEST_CASE("allocate_content_agnostic: degenerate equality and marginal-gain flip") {
    std::mt19937 rng(37);
    std::vector<CameraOptions> cams;
    for (int i = 0; i < 3; ++i) cams.push_back(random_camera(i, rng));
    DpParams params{compute_quantum(cams)};

    std::vector<UtilityTable> same;
    for (const auto& cam : cams) same.push_back(cam.table);
    AllocationDecision dp = allocate_dp(cams, 700.0, params);
    AllocationDecision agnostic = allocate_content_agnostic(cams, same, 700.0, params);
    CHECK(dp.total_utility == agnostic.total_utility);
    for (std::size_t i = 0; i < cams.size(); ++i)
        CHECK(dp.cameras[i].bitrate_kbps == agnostic.cameras[i].bitrate_kbps);

    // camera 1 has a large instantaneous ROI (steep gains) but a flat profile
    // average; the content-aware solver gives it at least as much bitrate
    std::vector<int> bitrates = {100, 200, 400};
    CameraOptions flat_now = make_camera(0, 1.0, bitrates, {0}, {0.50, 0.52, 0.54});
    CameraOptions steep_now = make_camera(1, 1.0, bitrates, {0}, {0.20, 0.55, 0.90});
    std::vector<UtilityTable> averages = {
        make_camera(0, 1.0, bitrates, {0}, {0.20, 0.55, 0.90}).table,
        make_camera(1, 1.0, bitrates, {0}, {0.50, 0.52, 0.54}).table,
    };
    AllocationDecision aware = allocate_dp({flat_now, steep_now}, 500.0, {100});
    AllocationDecision blind = allocate_content_agnostic({flat_now, steep_now}, averages, 500.0, {100});
    CHECK(aware.cameras[1].bitrate_kbps >= blind.cameras[1].bitrate_kbps);

    AllocationDecision zero = allocate_content_agnostic(cams, same, 0.0, params);
    CHECK(zero.total_bitrate_kbps == 0.0);

    CHECK_THROWS_AS(allocate_content_agnostic(cams, {}, 700.0, params), std::invalid_argument);
}
