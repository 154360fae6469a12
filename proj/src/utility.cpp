#include "roistream/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "roistream/io.hpp"

namespace roistream::utility {

namespace {

constexpr int kInputs = 4;

std::array<double, kInputs> raw_features(const ProfilingSample& s) {
    return {s.a, s.c, s.bitrate_kbps, s.resolution};
}

double scale_feature(const UtilityModel& m, int k, double x) {
    double lo = m.norm_min[k], hi = m.norm_max[k];
    if (hi > lo) return (x - lo) / (hi - lo);
    return x;  // degenerate range: pass through
}

struct Forward {
    std::vector<double> z1;  // pre-activation, hidden
    std::vector<double> h;   // ReLU(z1)
    double z2 = 0.0;
    double y = 0.0;
};

Forward forward(const UtilityModel& m, const std::array<double, kInputs>& scaled) {
    Forward f;
    f.z1.resize(m.hidden_size);
    f.h.resize(m.hidden_size);
    for (int j = 0; j < m.hidden_size; ++j) {
        double z = m.b1[j];
        for (int k = 0; k < kInputs; ++k) z += m.w1[static_cast<std::size_t>(j) * kInputs + k] * scaled[k];
        f.z1[j] = z;
        f.h[j] = z > 0.0 ? z : 0.0;
    }
    f.z2 = m.b2;
    for (int j = 0; j < m.hidden_size; ++j) f.z2 += m.w2[j] * f.h[j];
    f.y = 1.0 / (1.0 + std::exp(-f.z2));
    return f;
}

struct Gradients {
    std::vector<double> w1, b1, w2;
    double b2 = 0.0;

    explicit Gradients(int hidden)
        : w1(static_cast<std::size_t>(hidden) * kInputs, 0.0), b1(hidden, 0.0), w2(hidden, 0.0) {}
};

// Accumulates d(mean squared error)/dtheta over the given sample indices.
void accumulate_gradients(const UtilityModel& m, const std::vector<std::array<double, kInputs>>& inputs,
                          const std::vector<double>& targets, const std::vector<int>& indices,
                          Gradients& g) {
    const double inv_m = 1.0 / static_cast<double>(indices.size());
    for (int idx : indices) {
        Forward f = forward(m, inputs[idx]);
        double dy = 2.0 * (f.y - targets[idx]) * inv_m;
        double dz2 = dy * f.y * (1.0 - f.y);
        g.b2 += dz2;
        for (int j = 0; j < m.hidden_size; ++j) {
            g.w2[j] += dz2 * f.h[j];
            if (f.z1[j] > 0.0) {
                double dz1 = dz2 * m.w2[j];
                g.b1[j] += dz1;
                for (int k = 0; k < kInputs; ++k)
                    g.w1[static_cast<std::size_t>(j) * kInputs + k] += dz1 * inputs[idx][k];
            }
        }
    }
}

double mean_squared_error(const UtilityModel& m, const std::vector<std::array<double, kInputs>>& inputs,
                          const std::vector<double>& targets) {
    double acc = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        double d = forward(m, inputs[i]).y - targets[i];
        acc += d * d;
    }
    return acc / static_cast<double>(inputs.size());
}

std::vector<std::array<double, kInputs>> scaled_inputs(const UtilityModel& m,
                                                       const std::vector<ProfilingSample>& samples) {
    std::vector<std::array<double, kInputs>> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto raw = raw_features(samples[i]);
        for (int k = 0; k < kInputs; ++k) out[i][k] = scale_feature(m, k, raw[k]);
    }
    return out;
}

}  // namespace

UtilityModel train_utility(const std::vector<ProfilingSample>& samples, const TrainConfig& cfg,
                           TrainStats* stats) {
    if (samples.size() < 2) throw std::invalid_argument("insufficient profiling data (need >= 2 samples)");
    if (cfg.hidden_size < 1) throw std::invalid_argument("hidden_size must be >= 1");
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("learning_rate must be > 0");
    if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (cfg.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");

    UtilityModel model;
    model.hidden_size = cfg.hidden_size;
    for (int k = 0; k < kInputs; ++k) {
        model.norm_min[k] = raw_features(samples[0])[k];
        model.norm_max[k] = model.norm_min[k];
    }
    for (const ProfilingSample& s : samples) {
        auto raw = raw_features(s);
        for (int k = 0; k < kInputs; ++k) {
            model.norm_min[k] = std::min(model.norm_min[k], raw[k]);
            model.norm_max[k] = std::max(model.norm_max[k], raw[k]);
        }
    }

    std::mt19937_64 rng(cfg.seed);
    const double s1 = std::sqrt(6.0 / (kInputs + cfg.hidden_size));
    const double s2 = std::sqrt(6.0 / (cfg.hidden_size + 1));
    std::uniform_real_distribution<double> u1(-s1, s1), u2(-s2, s2);
    model.w1.resize(static_cast<std::size_t>(cfg.hidden_size) * kInputs);
    // Small positive bias keeps min-scaled inputs (all zeros for the sample
    // at the featurewise minimum) off the ReLU kink.
    model.b1.assign(cfg.hidden_size, 0.01);
    model.w2.resize(cfg.hidden_size);
    for (double& w : model.w1) w = u1(rng);
    for (double& w : model.w2) w = u2(rng);
    model.b2 = 0.0;

    auto inputs = scaled_inputs(model, samples);
    std::vector<double> targets(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) targets[i] = samples[i].accuracy;

    std::vector<int> order(samples.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> batch;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            std::size_t end = std::min(order.size(), start + cfg.batch_size);
            batch.assign(order.begin() + start, order.begin() + end);
            Gradients g(cfg.hidden_size);
            accumulate_gradients(model, inputs, targets, batch, g);
            const double lr = cfg.learning_rate;
            for (std::size_t i = 0; i < model.w1.size(); ++i)
                model.w1[i] -= lr * (g.w1[i] + cfg.l2 * model.w1[i]);
            for (int j = 0; j < cfg.hidden_size; ++j) {
                model.b1[j] -= lr * g.b1[j];
                model.w2[j] -= lr * (g.w2[j] + cfg.l2 * model.w2[j]);
            }
            model.b2 -= lr * g.b2;
        }
        if (epoch % 16 == 0 || epoch == cfg.epochs - 1) {
            double mse = mean_squared_error(model, inputs, targets);
            if (!std::isfinite(mse)) throw std::runtime_error("training diverged (non-finite loss)");
        }
    }

    if (stats) stats->train_mse = mean_squared_error(model, inputs, targets);
    return model;
}

double predict_accuracy(const UtilityModel& model, double a, double c, double bitrate_kbps,
                        double resolution, PredictTelemetry* telemetry) {
    if (model.hidden_size < 1) throw std::invalid_argument("model is not trained");
    std::array<double, kInputs> raw = {a, c, bitrate_kbps, resolution};
    std::array<double, kInputs> scaled;
    for (int k = 0; k < kInputs; ++k) {
        double x = raw[k];
        if (x < model.norm_min[k] || x > model.norm_max[k]) {
            x = std::clamp(x, model.norm_min[k], model.norm_max[k]);
            if (telemetry) ++telemetry->clamped;
        }
        scaled[k] = scale_feature(model, k, x);
    }
    return forward(model, scaled).y;
}

double gradient_check(const UtilityModel& model, const std::vector<ProfilingSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("gradient check needs at least one sample");
    auto inputs = scaled_inputs(model, samples);
    std::vector<double> targets(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) targets[i] = samples[i].accuracy;

    std::vector<int> all(samples.size());
    std::iota(all.begin(), all.end(), 0);
    Gradients analytic(model.hidden_size);
    accumulate_gradients(model, inputs, targets, all, analytic);

    UtilityModel probe = model;
    const double h = 1e-5;
    double max_rel = 0.0;
    auto check = [&](double* param, double grad) {
        double saved = *param;
        *param = saved + h;
        double fp = mean_squared_error(probe, inputs, targets);
        *param = saved - h;
        double fm = mean_squared_error(probe, inputs, targets);
        *param = saved;
        double fd = (fp - fm) / (2.0 * h);
        double rel = std::abs(grad - fd) / std::max({std::abs(grad), std::abs(fd), 1e-3});
        max_rel = std::max(max_rel, rel);
    };
    for (std::size_t i = 0; i < probe.w1.size(); ++i) check(&probe.w1[i], analytic.w1[i]);
    for (int j = 0; j < probe.hidden_size; ++j) {
        check(&probe.b1[j], analytic.b1[j]);
        check(&probe.w2[j], analytic.w2[j]);
    }
    check(&probe.b2, analytic.b2);
    return max_rel;
}

UtilityTable tabulate_utility(const UtilityModel& model, double a, double c,
                              const std::vector<int>& bitrates_kbps, const std::vector<int>& resolutions) {
    if (bitrates_kbps.empty() || resolutions.empty())
        throw std::invalid_argument("option lists must be nonempty");
    UtilityTable table;
    table.bitrates_kbps = bitrates_kbps;
    table.resolutions = resolutions;
    table.values.reserve(bitrates_kbps.size() * resolutions.size());
    for (int b : bitrates_kbps)
        for (int r : resolutions)
            table.values.push_back(predict_accuracy(model, a, c, b, r));
    return table;
}

UtilityTable average_table(const UtilityModel& model, const std::vector<std::pair<double, double>>& ac_pairs,
                           const std::vector<int>& bitrates_kbps, const std::vector<int>& resolutions) {
    if (ac_pairs.empty()) throw std::invalid_argument("need at least one (a, c) pair");
    UtilityTable acc = tabulate_utility(model, ac_pairs[0].first, ac_pairs[0].second, bitrates_kbps, resolutions);
    for (std::size_t i = 1; i < ac_pairs.size(); ++i) {
        UtilityTable t = tabulate_utility(model, ac_pairs[i].first, ac_pairs[i].second, bitrates_kbps, resolutions);
        for (std::size_t v = 0; v < acc.values.size(); ++v) acc.values[v] += t.values[v];
    }
    for (double& v : acc.values) v /= static_cast<double>(ac_pairs.size());
    return acc;
}

std::string model_to_json(const UtilityModel& model) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["hidden_size"] = model.hidden_size;
    nlohmann::json norm = nlohmann::json::array();
    for (int k = 0; k < kInputs; ++k) norm.push_back({model.norm_min[k], model.norm_max[k]});
    j["input_norm"] = norm;
    j["w1"] = model.w1;
    j["b1"] = model.b1;
    j["w2"] = model.w2;
    j["b2"] = model.b2;
    return j.dump(2) + "\n";
}

UtilityModel model_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("unsupported model format version");
    UtilityModel model;
    model.hidden_size = j.at("hidden_size").get<int>();
    auto norm = j.at("input_norm");
    if (norm.size() != kInputs) throw std::runtime_error("input_norm must have 4 entries");
    for (int k = 0; k < kInputs; ++k) {
        model.norm_min[k] = norm[k][0].get<double>();
        model.norm_max[k] = norm[k][1].get<double>();
    }
    model.w1 = j.at("w1").get<std::vector<double>>();
    model.b1 = j.at("b1").get<std::vector<double>>();
    model.w2 = j.at("w2").get<std::vector<double>>();
    model.b2 = j.at("b2").get<double>();
    if (model.w1.size() != static_cast<std::size_t>(model.hidden_size) * kInputs ||
        model.b1.size() != static_cast<std::size_t>(model.hidden_size) ||
        model.w2.size() != static_cast<std::size_t>(model.hidden_size))
        throw std::runtime_error("model weight shapes are inconsistent");
    return model;
}

std::map<int, std::vector<ProfilingSample>> load_profiling_csv(const std::filesystem::path& path) {
    io::CsvTable csv = io::read_csv(path);
    int c_cam = csv.column("camera"), c_a = csv.column("a"), c_c = csv.column("c");
    int c_b = csv.column("bitrate_kbps"), c_r = csv.column("resolution"), c_acc = csv.column("accuracy");
    if (c_cam < 0 || c_a < 0 || c_c < 0 || c_b < 0 || c_r < 0 || c_acc < 0)
        throw std::runtime_error(path.string() +
                                 ": expected header camera,a,c,bitrate_kbps,resolution,accuracy");
    std::map<int, std::vector<ProfilingSample>> out;
    for (const auto& row : csv.rows) {
        ProfilingSample s;
        int camera = static_cast<int>(io::parse_long(row[c_cam]));
        s.a = io::parse_double(row[c_a]);
        s.c = io::parse_double(row[c_c]);
        s.bitrate_kbps = io::parse_double(row[c_b]);
        s.resolution = io::parse_double(row[c_r]);
        s.accuracy = io::parse_double(row[c_acc]);
        if (s.bitrate_kbps <= 0.0) throw std::runtime_error("bitrate must be positive");
        if (s.a < 0.0 || s.a > 1.0 || s.c < 0.0 || s.c > 1.0 || s.accuracy < 0.0 || s.accuracy > 1.0)
            throw std::runtime_error("a, c, and accuracy must lie in [0,1]");
        out[camera].push_back(s);
    }
    return out;
}

}  // namespace roistream::utility
