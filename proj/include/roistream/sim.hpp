#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "roistream/alloc.hpp"
#include "roistream/elastic.hpp"
#include "roistream/utility.hpp"

namespace roistream::sim {

struct BandwidthTrace {
    std::string name;
    std::vector<double> kbps;  // one sample per slot, all > 0
};

enum class SchedulerKind { dp, dp_elastic, fair, agnostic };

std::string to_string(SchedulerKind kind);
SchedulerKind scheduler_from_string(const std::string& name);

struct SimConfig {
    double slot_length_s = 1.0;
    int frames_per_slot = 10;
    std::vector<int> bitrates_kbps = {50, 100, 200, 400, 800, 1000};
    std::vector<int> resolutions = {0, 1, 2};
    std::vector<double> weights;  // per camera; empty = all ones
    SchedulerKind scheduler = SchedulerKind::dp;
    std::uint64_t seed = 1;
    int horizon = 120;
    bool oracle_model = false;  // score and allocate from ground-truth tables
    utility::TrainConfig train;
};

/// Per-camera slot features plus the realized-accuracy tables used to score
/// whatever the scheduler picks.
struct FeatureStream {
    int camera_id = 0;
    std::vector<double> a, c;                         // per slot
    std::vector<utility::UtilityTable> ground_truth;  // per slot
};

struct Scenario {
    int cameras = 0;
    int horizon = 0;
    std::vector<int> bitrates_kbps;
    std::vector<int> resolutions;
    std::vector<FeatureStream> streams;
    std::vector<std::vector<utility::ProfilingSample>> profiling;  // per camera
    std::vector<elastic::BitrateAccuracyProfile> threshold_profiles;
};

/// Synthetic multi-camera scenario: a shared latent intensity drives all
/// cameras' ROI-area ratios (plus independent noise), and realized accuracy
/// follows a saturating curve in bitrate that degrades with area and
/// improves with confidence. Deterministic for a fixed seed. Also emits a
/// profiling set covering the full option grid per profiling slot.
Scenario generate_synthetic_scenario(std::uint64_t seed, int cameras, int horizon,
                                     const std::vector<int>& bitrates_kbps = {50, 100, 200, 400, 800, 1000},
                                     const std::vector<int>& resolutions = {0, 1, 2},
                                     int profiling_slots = 60);

enum class TraceProfile { low, medium, high };

TraceProfile trace_profile_from_string(const std::string& name);

/// AR(1) bandwidth trace rescaled to the profile's target moments
/// (low 521/230, medium 1134/499, high 2305/1397 kbps) and clipped at
/// 50 kbps. Deterministic for a fixed seed.
BandwidthTrace generate_trace(std::uint64_t seed, TraceProfile profile, int horizon);

struct SlotRecord {
    int slot = 0;
    double bandwidth_kbps = 0.0;
    double d_kbit = 0.0;  // elastic adjustment, 0 when disabled
    double effective_budget_kbps = 0.0;
    double predicted_utility = 0.0;
    double realized_utility = 0.0;
    std::vector<alloc::ChosenConfig> chosen;
};

struct SimReport {
    std::string scheduler;
    std::vector<SlotRecord> slots;
    double mean_utility = 0.0;
    double mean_total_bitrate_kbps = 0.0;
    std::vector<double> per_camera_mean_accuracy;
    int borrow_slots = 0;
    double borrowed_kbit = 0.0;
    double repaid_kbit = 0.0;
    double final_budget_used_kbit = 0.0;
};

/// Runs the per-slot server loop: features -> elastic adjustment (for
/// dp_elastic) -> utility tables -> scheduler -> realized utility from the
/// ground-truth tables. Fully deterministic.
SimReport run_simulation(const SimConfig& cfg, const BandwidthTrace& trace, const Scenario& scenario,
                         const std::vector<utility::UtilityModel>& models,
                         const elastic::ElasticConfig& elastic_cfg);

/// All four schedulers on identical inputs, in the fixed order
/// dp, dp_elastic, fair, agnostic. Runs are independent and parallelized.
std::vector<SimReport> compare_schedulers(const SimConfig& cfg, const BandwidthTrace& trace,
                                          const Scenario& scenario,
                                          const std::vector<utility::UtilityModel>& models,
                                          const elastic::ElasticConfig& elastic_cfg);

/// One utility model per camera trained from the scenario's profiling set.
std::vector<utility::UtilityModel> train_models(const Scenario& scenario, const utility::TrainConfig& cfg);

std::string slot_records_csv(const SimReport& report);
std::string comparison_csv(const std::vector<SimReport>& reports);
std::string report_summary_json(const SimReport& report);

/// Trace CSV `slot,kbps`.
BandwidthTrace load_trace_csv(const std::filesystem::path& path);

/// Scenario directory with features.csv (slot,camera,a,c), ground_truth.csv
/// (slot,camera,bitrate,resolution,accuracy) and profiling.csv in the
/// profiling-data format. Profiling rows are grouped into segments by
/// consecutive identical (camera,a,c).
Scenario load_scenario_dir(const std::filesystem::path& dir);

/// Writers for the same layout (used to export synthetic scenarios).
void write_scenario_dir(const std::filesystem::path& dir, const Scenario& scenario);

}  // namespace roistream::sim
