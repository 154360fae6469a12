#pragma once

#include <deque>
#include <limits>
#include <utility>
#include <vector>

#include "roistream/utility.hpp"

namespace roistream::elastic {

struct ElasticConfig {
    double alpha = 0.2;            // EMA smoothing factor, (0,1]
    double gamma_a = 0.5;          // area-threshold aggressiveness
    double gamma_wl = 1.0;         // borrow multiplier
    double gamma_wh = 1.0;         // replenish multiplier
    double sigma_high = 0.05;      // accuracy-difference std cutoff for tau_wl
    double sigma_low = 0.01;       // accuracy-difference std cutoff for tau_wh
    double budget_cap_kbit = 0.0;  // E, max borrowed and unrepaid data
    double slot_length_s = 1.0;    // T
    int sigma_window = 0;          // 0 = std over all observed slots
};

struct ElasticState {
    double ema_a = 0.0;
    long long count = 0;  // Welford accumulators over observed a values
    double mean_a = 0.0;
    double m2_a = 0.0;
    std::deque<double> window;  // recent a values when sigma_window > 0
    double budget_used_kbit = 0.0;
    double tau_a = std::numeric_limits<double>::infinity();  // no borrowing before the first update
    double tau_wl = 0.0;  // bandwidth below which borrowing is considered
    double tau_wh = 0.0;  // bandwidth at or above which debt is repaid
};

/// EMA and running-deviation update over the summed ROI-area ratio;
/// recomputes tau_a = ema + gamma_a * sigma_a. The first observation
/// initializes the EMA.
ElasticState ema_update(ElasticState state, double a_total, const ElasticConfig& cfg);

/// Per-camera profiling record: accuracy at each bitrate option (best
/// resolution) for every profiling segment.
struct BitrateAccuracyProfile {
    int camera_id = 0;
    std::vector<int> bitrates_kbps;               // ascending
    std::vector<std::vector<double>> per_segment;  // [segment][bitrate index]
};

/// Groups utility-module profiling samples into per-segment rows (segments
/// are consecutive runs of identical (a, c)), keeping the best accuracy per
/// bitrate. Bitrates are taken from the samples when the list is empty.
BitrateAccuracyProfile profile_from_samples(int camera_id,
                                            const std::vector<utility::ProfilingSample>& samples,
                                            std::vector<int> bitrates_kbps = {});

struct CameraThresholds {
    int camera_id = 0;
    std::vector<int> bitrates_kbps;
    std::vector<double> accuracy_gap_std;  // per bitrate, vs the top option
    int wl_bitrate_kbps = 0;               // this camera's tau_wl contribution
    int wh_bitrate_kbps = 0;               // this camera's tau_wh contribution
};

struct ThresholdReport {
    double tau_wl_kbps = 0.0;
    double tau_wh_kbps = 0.0;
    std::vector<CameraThresholds> cameras;
};

/// Offline bandwidth thresholds. Per camera, take the std dev over segments
/// of (accuracy at the top bitrate - accuracy at b) for each option b;
/// tau_wl sums the largest options still above sigma_high (smallest option
/// when none is), tau_wh sums the smallest options below sigma_low (largest
/// option when none is). Needs at least two segments per camera.
ThresholdReport compute_threshold_report(const std::vector<BitrateAccuracyProfile>& profiles,
                                         const ElasticConfig& cfg);
std::pair<double, double> compute_bandwidth_thresholds(const std::vector<BitrateAccuracyProfile>& profiles,
                                                       const ElasticConfig& cfg);

/// Borrow/repay decision for one slot. Returns the signed data adjustment D
/// in kbit and the updated state; the allocator's effective bitrate budget
/// for the slot is bandwidth_kbps + D / slot_length.
///   borrow  (a_total > tau_a and W < tau_wl):  D = min(gamma_wl*(tau_wl-W)*T, headroom)
///   repay   (W >= tau_wh):                     D = -min(gamma_wh*(W-tau_wh)*T, debt)
/// budget_used stays within [0, budget_cap].
std::pair<double, ElasticState> elastic_adjust(ElasticState state, double a_total, double bandwidth_kbps,
                                               const ElasticConfig& cfg);

}  // namespace roistream::elastic
