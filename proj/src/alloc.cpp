#include "roistream/alloc.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace roistream::alloc {

namespace {

void validate_camera(const CameraOptions& cam) {
    if (cam.weight < 0.0) throw std::invalid_argument("camera weight must be nonnegative");
    const auto& t = cam.table;
    if (t.values.size() != t.bitrates_kbps.size() * t.resolutions.size())
        throw std::invalid_argument("utility table shape does not match option lists");
    for (std::size_t i = 0; i < t.bitrates_kbps.size(); ++i) {
        if (t.bitrates_kbps[i] <= 0) throw std::invalid_argument("bitrate options must be positive");
        if (i > 0 && t.bitrates_kbps[i] <= t.bitrates_kbps[i - 1])
            throw std::invalid_argument("bitrate options must be strictly increasing");
    }
}

struct Choice {
    int units = 0;  // bitrate / quantum
    int bitrate_kbps = 0;
    int resolution = -1;
    double accuracy = 0.0;
    double value = 0.0;  // weight * accuracy
};

// Sentinel first, then the best-resolution curve in ascending bitrate order.
std::vector<Choice> camera_choices(const CameraOptions& cam, int quantum) {
    std::vector<Choice> choices;
    choices.push_back({});
    for (const BitrateChoice& bc : best_config_per_bitrate(cam)) {
        if (bc.bitrate_kbps % quantum != 0)
            throw std::invalid_argument("quantum does not divide every bitrate option");
        choices.push_back({bc.bitrate_kbps / quantum, bc.bitrate_kbps, bc.resolution, bc.accuracy,
                           cam.weight * bc.accuracy});
    }
    return choices;
}

struct SuffixBest {
    double value = 0.0;
    int units = 0;
};

// Knapsack DP over cameras[first..n) with the given capacity in quantum
// units, accumulating utility left to right starting from start_value (the
// same association the brute-force oracle uses, so optima compare exactly
// equal). Returns the max value and, among maximizing solutions, the
// minimum unit count.
SuffixBest suffix_best(const std::vector<std::vector<Choice>>& choices, std::size_t first, int capacity,
                       double start_value) {
    std::vector<double> value(capacity + 1, start_value);
    std::vector<int> units(capacity + 1, 0);
    std::vector<double> next_value(capacity + 1);
    std::vector<int> next_units(capacity + 1);
    for (std::size_t i = first; i < choices.size(); ++i) {
        for (int w = 0; w <= capacity; ++w) {
            bool seeded = false;
            for (const Choice& ch : choices[i]) {
                if (ch.units > w) continue;
                double v = value[w - ch.units] + ch.value;
                int u = units[w - ch.units] + ch.units;
                if (!seeded || v > next_value[w] || (v == next_value[w] && u < next_units[w])) {
                    next_value[w] = v;
                    next_units[w] = u;
                    seeded = true;
                }
            }
            // The sentinel always fits, so every state gets seeded.
            assert(seeded);
        }
        value.swap(next_value);
        units.swap(next_units);
    }
    return {value[capacity], units[capacity]};
}

}  // namespace

std::vector<BitrateChoice> best_config_per_bitrate(const CameraOptions& cam) {
    validate_camera(cam);
    std::vector<BitrateChoice> out;
    const auto& t = cam.table;
    out.reserve(t.bitrates_kbps.size());
    for (std::size_t bi = 0; bi < t.bitrates_kbps.size(); ++bi) {
        std::size_t best = 0;
        for (std::size_t ri = 1; ri < t.resolutions.size(); ++ri)
            if (t.at(static_cast<int>(bi), static_cast<int>(ri)) >
                t.at(static_cast<int>(bi), static_cast<int>(best)))
                best = ri;
        out.push_back({t.bitrates_kbps[bi], t.resolutions[best],
                       t.at(static_cast<int>(bi), static_cast<int>(best))});
    }
    return out;
}

int compute_quantum(const std::vector<CameraOptions>& cameras) {
    int g = 0;
    for (const CameraOptions& cam : cameras) {
        validate_camera(cam);
        for (int b : cam.table.bitrates_kbps) g = std::gcd(g, b);
    }
    if (g == 0) throw std::invalid_argument("no bitrate options to derive a quantum from");
    return g;
}

AllocationDecision allocate_dp(const std::vector<CameraOptions>& cameras, double budget_kbps,
                               const DpParams& params) {
    if (params.quantum_kbps < 1) throw std::invalid_argument("quantum must be >= 1 kbps");
    std::vector<std::vector<Choice>> choices;
    choices.reserve(cameras.size());
    for (const CameraOptions& cam : cameras) {
        validate_camera(cam);
        choices.push_back(camera_choices(cam, params.quantum_kbps));
    }

    AllocationDecision decision;
    if (cameras.empty()) return decision;

    const int capacity =
        budget_kbps > 0.0 ? static_cast<int>(std::floor(budget_kbps / params.quantum_kbps)) : 0;

    SuffixBest target = suffix_best(choices, 0, capacity, 0.0);

    // Reconstruct front to back, giving each camera the smallest bitrate
    // that still completes to the optimal (value, units) pair.
    double prefix = 0.0;
    int used = 0;
    for (std::size_t i = 0; i < cameras.size(); ++i) {
        const Choice* picked = nullptr;
        for (const Choice& ch : choices[i]) {
            if (used + ch.units > capacity) continue;
            SuffixBest rest = suffix_best(choices, i + 1, capacity - used - ch.units, prefix + ch.value);
            if (rest.value == target.value && used + ch.units + rest.units == target.units) {
                picked = &ch;
                break;
            }
        }
        if (picked == nullptr) throw std::logic_error("allocation reconstruction lost the optimum");
        prefix += picked->value;
        used += picked->units;
        decision.cameras.push_back({picked->bitrate_kbps, picked->resolution, picked->accuracy});
        decision.total_bitrate_kbps += picked->bitrate_kbps;
    }
    decision.total_utility = prefix;
    assert(prefix == target.value);
    return decision;
}

AllocationDecision allocate_fair(const std::vector<CameraOptions>& cameras, double budget_kbps) {
    AllocationDecision decision;
    if (cameras.empty()) return decision;
    const double n = static_cast<double>(cameras.size());
    double total_utility = 0.0;
    for (const CameraOptions& cam : cameras) {
        validate_camera(cam);
        ChosenConfig chosen;  // sentinel unless an option fits the share
        // b <= budget/n, compared as b*n <= budget to keep the sum under budget exactly
        for (const BitrateChoice& bc : best_config_per_bitrate(cam)) {
            if (static_cast<double>(bc.bitrate_kbps) * n <= budget_kbps)
                chosen = {bc.bitrate_kbps, bc.resolution, bc.accuracy};
        }
        total_utility += cam.weight * chosen.predicted_accuracy;
        decision.total_bitrate_kbps += chosen.bitrate_kbps;
        decision.cameras.push_back(chosen);
    }
    decision.total_utility = total_utility;
    return decision;
}

AllocationDecision allocate_content_agnostic(const std::vector<CameraOptions>& cameras,
                                             const std::vector<utility::UtilityTable>& average_tables,
                                             double budget_kbps, const DpParams& params) {
    if (average_tables.size() != cameras.size())
        throw std::invalid_argument("need one average table per camera");
    std::vector<CameraOptions> averaged = cameras;
    for (std::size_t i = 0; i < cameras.size(); ++i) {
        if (average_tables[i].bitrates_kbps != cameras[i].table.bitrates_kbps ||
            average_tables[i].resolutions != cameras[i].table.resolutions)
            throw std::invalid_argument("average table options differ from the camera's options");
        averaged[i].table = average_tables[i];
    }
    return allocate_dp(averaged, budget_kbps, params);
}

}  // namespace roistream::alloc
