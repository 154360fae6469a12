#include "roistream/elastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "roistream/io.hpp"

namespace roistream::elastic {

namespace {

void validate_config(const ElasticConfig& cfg) {
    if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) throw std::invalid_argument("alpha must be in (0,1]");
    if (cfg.gamma_a < 0.0 || cfg.gamma_wl < 0.0 || cfg.gamma_wh < 0.0)
        throw std::invalid_argument("gamma parameters must be nonnegative");
    if (cfg.sigma_low > cfg.sigma_high) throw std::invalid_argument("sigma_low must not exceed sigma_high");
    if (cfg.budget_cap_kbit < 0.0) throw std::invalid_argument("budget cap must be nonnegative");
    if (cfg.slot_length_s <= 0.0) throw std::invalid_argument("slot length must be positive");
}

double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

}  // namespace

ElasticState ema_update(ElasticState state, double a_total, const ElasticConfig& cfg) {
    validate_config(cfg);
    if (a_total < 0.0) throw std::invalid_argument("a_total must be nonnegative");

    state.ema_a = state.count == 0 ? a_total : cfg.alpha * a_total + (1.0 - cfg.alpha) * state.ema_a;

    ++state.count;
    double delta = a_total - state.mean_a;
    state.mean_a += delta / static_cast<double>(state.count);
    state.m2_a += delta * (a_total - state.mean_a);

    double sigma;
    if (cfg.sigma_window > 0) {
        state.window.push_back(a_total);
        while (state.window.size() > static_cast<std::size_t>(cfg.sigma_window)) state.window.pop_front();
        sigma = sample_std(std::vector<double>(state.window.begin(), state.window.end()));
    } else {
        sigma = state.count >= 2 ? std::sqrt(state.m2_a / static_cast<double>(state.count - 1)) : 0.0;
    }

    state.tau_a = state.ema_a + cfg.gamma_a * sigma;
    return state;
}

BitrateAccuracyProfile profile_from_samples(int camera_id,
                                            const std::vector<utility::ProfilingSample>& samples,
                                            std::vector<int> bitrates_kbps) {
    if (bitrates_kbps.empty()) {
        for (const utility::ProfilingSample& s : samples) {
            int b = static_cast<int>(s.bitrate_kbps);
            if (std::find(bitrates_kbps.begin(), bitrates_kbps.end(), b) == bitrates_kbps.end())
                bitrates_kbps.push_back(b);
        }
        std::sort(bitrates_kbps.begin(), bitrates_kbps.end());
    }
    BitrateAccuracyProfile profile;
    profile.camera_id = camera_id;
    profile.bitrates_kbps = bitrates_kbps;
    std::pair<double, double> current{-1.0, -1.0};
    for (const utility::ProfilingSample& s : samples) {
        if (std::pair<double, double>{s.a, s.c} != current) {
            current = {s.a, s.c};
            profile.per_segment.emplace_back(bitrates_kbps.size(), 0.0);
        }
        auto it = std::find(bitrates_kbps.begin(), bitrates_kbps.end(), static_cast<int>(s.bitrate_kbps));
        if (it == bitrates_kbps.end())
            throw std::invalid_argument("profiling sample bitrate is not in the option list");
        auto& row = profile.per_segment.back();
        std::size_t bi = static_cast<std::size_t>(it - bitrates_kbps.begin());
        row[bi] = std::max(row[bi], s.accuracy);
    }
    return profile;
}

ThresholdReport compute_threshold_report(const std::vector<BitrateAccuracyProfile>& profiles,
                                         const ElasticConfig& cfg) {
    validate_config(cfg);
    if (profiles.empty()) throw std::invalid_argument("no profiling data");

    ThresholdReport report;
    for (const BitrateAccuracyProfile& p : profiles) {
        const std::size_t n_bitrates = p.bitrates_kbps.size();
        if (n_bitrates == 0) throw std::invalid_argument("profile has no bitrate options");
        if (p.per_segment.size() < 2)
            throw std::invalid_argument("insufficient profiling data: need >= 2 segments per camera");
        for (const auto& row : p.per_segment)
            if (row.size() != n_bitrates)
                throw std::invalid_argument("profile row length does not match bitrate options");

        CameraThresholds cam;
        cam.camera_id = p.camera_id;
        cam.bitrates_kbps = p.bitrates_kbps;
        cam.accuracy_gap_std.resize(n_bitrates);
        std::vector<double> diffs(p.per_segment.size());
        for (std::size_t bi = 0; bi < n_bitrates; ++bi) {
            for (std::size_t s = 0; s < p.per_segment.size(); ++s)
                diffs[s] = p.per_segment[s][n_bitrates - 1] - p.per_segment[s][bi];
            cam.accuracy_gap_std[bi] = sample_std(diffs);
        }

        cam.wl_bitrate_kbps = p.bitrates_kbps.front();  // fallback: smallest option
        for (std::size_t bi = 0; bi < n_bitrates; ++bi)
            if (cam.accuracy_gap_std[bi] > cfg.sigma_high) cam.wl_bitrate_kbps = p.bitrates_kbps[bi];
        cam.wh_bitrate_kbps = p.bitrates_kbps.back();  // fallback: largest option
        for (std::size_t bi = n_bitrates; bi-- > 0;)
            if (cam.accuracy_gap_std[bi] < cfg.sigma_low) cam.wh_bitrate_kbps = p.bitrates_kbps[bi];

        report.tau_wl_kbps += cam.wl_bitrate_kbps;
        report.tau_wh_kbps += cam.wh_bitrate_kbps;
        report.cameras.push_back(std::move(cam));
    }

    if (report.tau_wl_kbps > report.tau_wh_kbps)
        io::log(io::LogLevel::warn,
                "bandwidth thresholds inverted: tau_wl=" + io::format_double(report.tau_wl_kbps) +
                    " > tau_wh=" + io::format_double(report.tau_wh_kbps));
    return report;
}

std::pair<double, double> compute_bandwidth_thresholds(const std::vector<BitrateAccuracyProfile>& profiles,
                                                       const ElasticConfig& cfg) {
    ThresholdReport report = compute_threshold_report(profiles, cfg);
    return {report.tau_wl_kbps, report.tau_wh_kbps};
}

std::pair<double, ElasticState> elastic_adjust(ElasticState state, double a_total, double bandwidth_kbps,
                                               const ElasticConfig& cfg) {
    validate_config(cfg);
    double d_kbit = 0.0;
    if (a_total > state.tau_a && bandwidth_kbps < state.tau_wl) {
        double want = cfg.gamma_wl * (state.tau_wl - bandwidth_kbps) * cfg.slot_length_s;
        double headroom = cfg.budget_cap_kbit - state.budget_used_kbit;
        d_kbit = std::max(0.0, std::min(want, headroom));
        state.budget_used_kbit += d_kbit;
    } else if (bandwidth_kbps >= state.tau_wh) {
        double repay = std::min(cfg.gamma_wh * (bandwidth_kbps - state.tau_wh) * cfg.slot_length_s,
                                state.budget_used_kbit);
        d_kbit = -std::max(0.0, repay);
        state.budget_used_kbit += d_kbit;
    }
    if (d_kbit == 0.0) d_kbit = 0.0;  // normalize -0
    return {d_kbit, state};
}

}  // namespace roistream::elastic
