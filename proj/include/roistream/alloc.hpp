#pragma once

#include <vector>

#include "roistream/utility.hpp"

namespace roistream::alloc {

/// One camera's slot input to the allocator: its utility weight and the
/// predicted-F1 table over the (bitrate, resolution) option grid.
struct CameraOptions {
    int camera_id = 0;
    double weight = 1.0;
    utility::UtilityTable table;
};

/// Chosen encoding for one camera. bitrate 0 / resolution -1 is the
/// "no transmission" sentinel used when nothing fits the budget.
struct ChosenConfig {
    int bitrate_kbps = 0;
    int resolution = -1;
    double predicted_accuracy = 0.0;
};

struct AllocationDecision {
    std::vector<ChosenConfig> cameras;
    double total_bitrate_kbps = 0.0;
    double total_utility = 0.0;  // weighted, summed in camera order
};

struct DpParams {
    int quantum_kbps = 0;  // must divide every bitrate option
};

struct BitrateChoice {
    int bitrate_kbps = 0;
    int resolution = -1;
    double accuracy = 0.0;
};

/// For each bitrate, the resolution maximizing the table entry; ties go to
/// the lowest resolution index.
std::vector<BitrateChoice> best_config_per_bitrate(const CameraOptions& cam);

/// gcd over all bitrate options of all cameras.
int compute_quantum(const std::vector<CameraOptions>& cameras);

/// Exact multiple-choice knapsack over the per-camera best-resolution
/// curves plus a zero-bitrate sentinel: maximizes the weighted predicted
/// F1 sum subject to sum(bitrate) <= budget. The budget is floored to a
/// multiple of the quantum first. Ties prefer the lower total bitrate,
/// then the assignment giving lower-index cameras the lower bitrates.
AllocationDecision allocate_dp(const std::vector<CameraOptions>& cameras, double budget_kbps,
                               const DpParams& params);

/// Fair-share baseline: every camera gets the largest bitrate option not
/// exceeding budget / camera-count (sentinel when none fits).
AllocationDecision allocate_fair(const std::vector<CameraOptions>& cameras, double budget_kbps);

/// Content-agnostic baseline: the DP run on profile-average tables instead
/// of the instantaneous ones. Option lists must match per camera.
AllocationDecision allocate_content_agnostic(const std::vector<CameraOptions>& cameras,
                                             const std::vector<utility::UtilityTable>& average_tables,
                                             double budget_kbps, const DpParams& params);

}  // namespace roistream::alloc
