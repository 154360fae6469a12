#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace roistream::utility {

/// One profiling observation: content features (a, c), encoding config
/// (bitrate, resolution index) and the measured detection F1.
struct ProfilingSample {
    double a = 0.0;             // ROI-area ratio in [0,1]
    double c = 0.0;             // detector confidence in [0,1]
    double bitrate_kbps = 0.0;  // > 0
    double resolution = 0.0;    // ordinal index into the resolution list
    double accuracy = 0.0;      // F1 in [0,1]
};

struct TrainConfig {
    int hidden_size = 16;
    double learning_rate = 0.1;
    int epochs = 2000;
    int batch_size = 16;
    std::uint64_t seed = 1;
    double l2 = 0.0;
};

/// Two-layer regression network: 4 inputs -> hidden ReLU -> sigmoid output.
/// Inputs are min-max scaled with ranges captured from the training data;
/// a feature whose range is degenerate (min == max) passes through unscaled.
struct UtilityModel {
    int hidden_size = 0;
    std::array<double, 4> norm_min{};
    std::array<double, 4> norm_max{};
    std::vector<double> w1;  // hidden_size x 4, row-major
    std::vector<double> b1;  // hidden_size
    std::vector<double> w2;  // 1 x hidden_size
    double b2 = 0.0;
};

struct TrainStats {
    double train_mse = 0.0;
};

struct PredictTelemetry {
    std::uint64_t clamped = 0;  // inputs outside the training range
};

/// Mini-batch SGD on mean squared error; bitwise deterministic for a fixed
/// seed, data, and config. Throws on fewer than two samples or a non-finite
/// loss.
UtilityModel train_utility(const std::vector<ProfilingSample>& samples, const TrainConfig& cfg,
                           TrainStats* stats = nullptr);

/// Deterministic forward pass; inputs are clamped to the training range
/// (clamps counted in telemetry when provided). Output is in [0,1].
double predict_accuracy(const UtilityModel& model, double a, double c, double bitrate_kbps,
                        double resolution, PredictTelemetry* telemetry = nullptr);

/// Max relative error between the analytic gradient of the MSE and central
/// finite differences (step 1e-5) over all parameters.
double gradient_check(const UtilityModel& model, const std::vector<ProfilingSample>& samples);

/// Predicted F1 over the option grid for fixed content features.
struct UtilityTable {
    std::vector<int> bitrates_kbps;  // ascending
    std::vector<int> resolutions;    // ordinal indices
    std::vector<double> values;      // |B| x |R| row-major by bitrate

    double at(int bitrate_index, int resolution_index) const {
        return values[static_cast<std::size_t>(bitrate_index) * resolutions.size() + resolution_index];
    }
};

UtilityTable tabulate_utility(const UtilityModel& model, double a, double c,
                              const std::vector<int>& bitrates_kbps, const std::vector<int>& resolutions);

/// Entrywise mean of tabulate_utility over a set of (a, c) pairs; the
/// content-agnostic baseline allocates from these profile averages.
UtilityTable average_table(const UtilityModel& model, const std::vector<std::pair<double, double>>& ac_pairs,
                           const std::vector<int>& bitrates_kbps, const std::vector<int>& resolutions);

/// JSON persistence with a format-version field.
std::string model_to_json(const UtilityModel& model);
UtilityModel model_from_json(const std::string& json_text);

/// Profiling CSV `camera,a,c,bitrate_kbps,resolution,accuracy`, grouped by camera.
std::map<int, std::vector<ProfilingSample>> load_profiling_csv(const std::filesystem::path& path);

}  // namespace roistream::utility
