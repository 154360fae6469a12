#include "roistream/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "roistream/io.hpp"

namespace roistream::sim {

std::string to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::dp: return "dp";
        case SchedulerKind::dp_elastic: return "dp+elastic";
        case SchedulerKind::fair: return "fair";
        case SchedulerKind::agnostic: return "agnostic";
    }
    return "?";
}

SchedulerKind scheduler_from_string(const std::string& name) {
    if (name == "dp") return SchedulerKind::dp;
    if (name == "dp+elastic" || name == "dp_elastic") return SchedulerKind::dp_elastic;
    if (name == "fair") return SchedulerKind::fair;
    if (name == "agnostic") return SchedulerKind::agnostic;
    throw std::invalid_argument("unknown scheduler '" + name + "'");
}

TraceProfile trace_profile_from_string(const std::string& name) {
    if (name == "low") return TraceProfile::low;
    if (name == "medium") return TraceProfile::medium;
    if (name == "high") return TraceProfile::high;
    throw std::invalid_argument("unknown trace profile '" + name + "'");
}

namespace {

// Realized-accuracy law of the synthetic scenario: saturating in bitrate,
// degrading with ROI area, improving with confidence. Each resolution slot
// trades saturation speed against the achievable ceiling.
double gt_accuracy(double a, double c, int bitrate_kbps, std::size_t res_pos) {
    static constexpr double caps[3] = {0.88, 0.97, 1.0};
    static constexpr double betas[3] = {500.0, 800.0, 1200.0};
    double cap = caps[res_pos % 3];
    double beta = betas[res_pos % 3];
    double acc = (0.52 + 0.44 * c) * cap * (1.0 - std::exp(-bitrate_kbps / (beta * (0.18 + a))));
    return std::clamp(acc, 0.0, 1.0);
}

utility::UtilityTable gt_table(double a, double c, const std::vector<int>& bitrates,
                               const std::vector<int>& resolutions) {
    utility::UtilityTable t;
    t.bitrates_kbps = bitrates;
    t.resolutions = resolutions;
    t.values.reserve(bitrates.size() * resolutions.size());
    for (int b : bitrates)
        for (std::size_t ri = 0; ri < resolutions.size(); ++ri) t.values.push_back(gt_accuracy(a, c, b, ri));
    return t;
}

int index_of(const std::vector<int>& options, int value, const char* what) {
    auto it = std::find(options.begin(), options.end(), value);
    if (it == options.end())
        throw std::runtime_error(std::string("unknown ") + what + " option " + std::to_string(value));
    return static_cast<int>(it - options.begin());
}

// Profiling rows belonging to one segment share (a, c) and are consecutive.
std::vector<std::pair<double, double>> segment_ac_pairs(const std::vector<utility::ProfilingSample>& samples) {
    std::vector<std::pair<double, double>> pairs;
    for (const utility::ProfilingSample& s : samples)
        if (pairs.empty() || pairs.back() != std::pair<double, double>{s.a, s.c})
            pairs.emplace_back(s.a, s.c);
    return pairs;
}

std::vector<double> effective_weights(const SimConfig& cfg, int cameras) {
    if (cfg.weights.empty()) return std::vector<double>(cameras, 1.0);
    if (static_cast<int>(cfg.weights.size()) != cameras)
        throw std::invalid_argument("weights length does not match camera count");
    return cfg.weights;
}

// Profile-average tables for the content-agnostic baseline: the mean
// observed accuracy per (bitrate, resolution) in oracle mode, otherwise the
// model prediction averaged over the profiling segments' (a, c).
std::vector<utility::UtilityTable> average_tables(const SimConfig& cfg, const Scenario& scenario,
                                                  const std::vector<utility::UtilityModel>& models) {
    std::vector<utility::UtilityTable> out;
    out.reserve(scenario.cameras);
    for (int i = 0; i < scenario.cameras; ++i) {
        const auto& samples = scenario.profiling.at(i);
        if (samples.empty()) throw std::runtime_error("camera has no profiling data");
        if (cfg.oracle_model) {
            utility::UtilityTable t;
            t.bitrates_kbps = scenario.bitrates_kbps;
            t.resolutions = scenario.resolutions;
            t.values.assign(t.bitrates_kbps.size() * t.resolutions.size(), 0.0);
            std::vector<int> counts(t.values.size(), 0);
            for (const utility::ProfilingSample& s : samples) {
                int bi = index_of(t.bitrates_kbps, static_cast<int>(s.bitrate_kbps), "bitrate");
                int ri = index_of(t.resolutions, static_cast<int>(s.resolution), "resolution");
                std::size_t cell = static_cast<std::size_t>(bi) * t.resolutions.size() + ri;
                t.values[cell] += s.accuracy;
                ++counts[cell];
            }
            for (std::size_t cell = 0; cell < t.values.size(); ++cell) {
                if (counts[cell] == 0) throw std::runtime_error("profiling does not cover the option grid");
                t.values[cell] /= counts[cell];
            }
            out.push_back(std::move(t));
        } else {
            out.push_back(utility::average_table(models.at(i), segment_ac_pairs(samples),
                                                 scenario.bitrates_kbps, scenario.resolutions));
        }
    }
    return out;
}

}  // namespace

Scenario generate_synthetic_scenario(std::uint64_t seed, int cameras, int horizon,
                                     const std::vector<int>& bitrates_kbps,
                                     const std::vector<int>& resolutions, int profiling_slots) {
    if (cameras < 1) throw std::invalid_argument("need at least one camera");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (profiling_slots < 2) throw std::invalid_argument("need >= 2 profiling slots");
    if (bitrates_kbps.empty() || resolutions.empty()) throw std::invalid_argument("empty option lists");

    Scenario sc;
    sc.cameras = cameras;
    sc.horizon = horizon;
    sc.bitrates_kbps = bitrates_kbps;
    sc.resolutions = resolutions;
    sc.streams.resize(cameras);
    sc.profiling.resize(cameras);
    sc.threshold_profiles.resize(cameras);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> base(cameras), load(cameras), cbase(cameras);
    for (int i = 0; i < cameras; ++i) {
        base[i] = 0.05 + 0.15 * u01(rng);
        load[i] = 0.35 + 0.25 * u01(rng);
        cbase[i] = 0.55 + 0.25 * u01(rng);
        sc.streams[i].camera_id = i;
        sc.threshold_profiles[i].camera_id = i;
        sc.threshold_profiles[i].bitrates_kbps = bitrates_kbps;
    }

    double latent = 0.5;  // shared traffic intensity, AR(1) in [0,1]
    const int total = profiling_slots + horizon;
    for (int t = 0; t < total; ++t) {
        latent = std::clamp(0.5 + 0.88 * (latent - 0.5) + 0.16 * gauss(rng), 0.0, 1.0);
        for (int i = 0; i < cameras; ++i) {
            double a = std::clamp(base[i] + load[i] * latent + 0.02 * gauss(rng), 0.01, 0.95);
            double c = std::clamp(cbase[i] - 0.25 * a + 0.03 * gauss(rng), 0.05, 0.99);
            if (t < profiling_slots) {
                std::vector<double> best_per_bitrate;
                best_per_bitrate.reserve(bitrates_kbps.size());
                for (int b : bitrates_kbps) {
                    double best = 0.0;
                    for (std::size_t ri = 0; ri < resolutions.size(); ++ri) {
                        double acc = gt_accuracy(a, c, b, ri);
                        sc.profiling[i].push_back(
                            {a, c, static_cast<double>(b), static_cast<double>(resolutions[ri]), acc});
                        best = std::max(best, acc);
                    }
                    best_per_bitrate.push_back(best);
                }
                sc.threshold_profiles[i].per_segment.push_back(std::move(best_per_bitrate));
            } else {
                sc.streams[i].a.push_back(a);
                sc.streams[i].c.push_back(c);
                sc.streams[i].ground_truth.push_back(gt_table(a, c, bitrates_kbps, resolutions));
            }
        }
    }
    return sc;
}

BandwidthTrace generate_trace(std::uint64_t seed, TraceProfile profile, int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    double target_mean = 0.0, target_std = 0.0;
    std::string name;
    switch (profile) {
        case TraceProfile::low: target_mean = 521, target_std = 230, name = "low"; break;
        case TraceProfile::medium: target_mean = 1134, target_std = 499, name = "medium"; break;
        case TraceProfile::high: target_mean = 2305, target_std = 1397, name = "high"; break;
    }

    std::seed_seq seq{seed, static_cast<std::uint64_t>(profile) + 1};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double phi = 0.8;

    std::vector<double> x(horizon);
    double prev = gauss(rng);
    x[0] = prev;
    for (int t = 1; t < horizon; ++t) {
        prev = phi * prev + std::sqrt(1.0 - phi * phi) * gauss(rng);
        x[t] = prev;
    }

    // Rescale to the exact target sample moments, then clip; the clip at
    // 50 kbps perturbs the moments by a few percent at most.
    double m = std::accumulate(x.begin(), x.end(), 0.0) / horizon;
    double var = 0.0;
    for (double v : x) var += (v - m) * (v - m);
    double s = horizon >= 2 ? std::sqrt(var / (horizon - 1)) : 0.0;

    BandwidthTrace trace;
    trace.name = name;
    trace.kbps.resize(horizon);
    for (int t = 0; t < horizon; ++t) {
        double v = s > 0.0 ? target_mean + (x[t] - m) * (target_std / s) : target_mean;
        trace.kbps[t] = std::max(50.0, v);
    }
    return trace;
}

SimReport run_simulation(const SimConfig& cfg, const BandwidthTrace& trace, const Scenario& scenario,
                         const std::vector<utility::UtilityModel>& models,
                         const elastic::ElasticConfig& elastic_cfg) {
    const int n = scenario.cameras;
    if (n < 1) throw std::invalid_argument("scenario has no cameras");
    if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (static_cast<int>(trace.kbps.size()) < cfg.horizon)
        throw std::runtime_error("trace shorter than the simulation horizon");
    if (scenario.horizon < cfg.horizon) throw std::runtime_error("scenario shorter than the simulation horizon");
    if (!cfg.oracle_model && static_cast<int>(models.size()) != n)
        throw std::runtime_error("need one trained model per camera (or oracle_model)");

    const std::vector<double> weights = effective_weights(cfg, n);
    const std::vector<int>& bitrates = scenario.bitrates_kbps;
    const std::vector<int>& resolutions = scenario.resolutions;

    int quantum = 0;
    for (int b : bitrates) quantum = std::gcd(quantum, b);
    if (quantum == 0) throw std::runtime_error("scenario has no bitrate options");
    const alloc::DpParams dp_params{quantum};

    const bool use_elastic = cfg.scheduler == SchedulerKind::dp_elastic;
    elastic::ElasticConfig ecfg = elastic_cfg;
    ecfg.slot_length_s = cfg.slot_length_s;
    elastic::ElasticState estate;
    if (use_elastic) {
        if (ecfg.budget_cap_kbit <= 0.0) {
            double mean = 0.0;
            for (int t = 0; t < cfg.horizon; ++t) mean += trace.kbps[t];
            mean /= cfg.horizon;
            ecfg.budget_cap_kbit = 2.0 * mean * cfg.slot_length_s;
        }
        auto [wl, wh] = elastic::compute_bandwidth_thresholds(scenario.threshold_profiles, ecfg);
        estate.tau_wl = wl;
        estate.tau_wh = wh;
    }

    std::vector<utility::UtilityTable> agnostic_tables;
    if (cfg.scheduler == SchedulerKind::agnostic) agnostic_tables = average_tables(cfg, scenario, models);

    SimReport report;
    report.scheduler = to_string(cfg.scheduler);
    report.slots.reserve(cfg.horizon);
    report.per_camera_mean_accuracy.assign(n, 0.0);
    double utility_sum = 0.0;
    double bitrate_sum = 0.0;

    for (int t = 0; t < cfg.horizon; ++t) {
        const double bandwidth = trace.kbps[t];
        double a_total = 0.0;
        for (int i = 0; i < n; ++i) a_total += scenario.streams[i].a[t];

        double d_kbit = 0.0;
        double effective = bandwidth;
        if (use_elastic) {
            estate = elastic::ema_update(estate, a_total, ecfg);
            std::tie(d_kbit, estate) = elastic::elastic_adjust(estate, a_total, bandwidth, ecfg);
            effective = std::max(0.0, bandwidth + d_kbit / ecfg.slot_length_s);
            if (d_kbit > 0.0) {
                ++report.borrow_slots;
                report.borrowed_kbit += d_kbit;
            } else if (d_kbit < 0.0) {
                report.repaid_kbit += -d_kbit;
            }
        }

        std::vector<alloc::CameraOptions> cams(n);
        for (int i = 0; i < n; ++i) {
            cams[i].camera_id = scenario.streams[i].camera_id;
            cams[i].weight = weights[i];
            cams[i].table = cfg.oracle_model
                                ? scenario.streams[i].ground_truth[t]
                                : utility::tabulate_utility(models[i], scenario.streams[i].a[t],
                                                            scenario.streams[i].c[t], bitrates, resolutions);
        }

        alloc::AllocationDecision decision;
        switch (cfg.scheduler) {
            case SchedulerKind::dp:
            case SchedulerKind::dp_elastic:
                decision = alloc::allocate_dp(cams, effective, dp_params);
                break;
            case SchedulerKind::fair:
                decision = alloc::allocate_fair(cams, effective);
                break;
            case SchedulerKind::agnostic:
                decision = alloc::allocate_content_agnostic(cams, agnostic_tables, effective, dp_params);
                break;
        }

        double realized = 0.0;
        for (int i = 0; i < n; ++i) {
            const alloc::ChosenConfig& ch = decision.cameras[i];
            double acc = 0.0;
            if (ch.bitrate_kbps > 0) {
                int bi = index_of(bitrates, ch.bitrate_kbps, "bitrate");
                int ri = index_of(resolutions, ch.resolution, "resolution");
                acc = scenario.streams[i].ground_truth[t].at(bi, ri);
            }
            realized += weights[i] * acc;
            report.per_camera_mean_accuracy[i] += acc;
        }

        utility_sum += realized;
        bitrate_sum += decision.total_bitrate_kbps;
        report.slots.push_back(
            {t, bandwidth, d_kbit, effective, decision.total_utility, realized, decision.cameras});
    }

    report.mean_utility = utility_sum / cfg.horizon;
    report.mean_total_bitrate_kbps = bitrate_sum / cfg.horizon;
    for (double& acc : report.per_camera_mean_accuracy) acc /= cfg.horizon;
    report.final_budget_used_kbit = estate.budget_used_kbit;
    return report;
}

std::vector<SimReport> compare_schedulers(const SimConfig& cfg, const BandwidthTrace& trace,
                                          const Scenario& scenario,
                                          const std::vector<utility::UtilityModel>& models,
                                          const elastic::ElasticConfig& elastic_cfg) {
    static constexpr SchedulerKind kinds[4] = {SchedulerKind::dp, SchedulerKind::dp_elastic,
                                               SchedulerKind::fair, SchedulerKind::agnostic};
    std::vector<SimReport> reports(4);
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < 4; ++i) {
        try {
            SimConfig run_cfg = cfg;
            run_cfg.scheduler = kinds[i];
            reports[i] = run_simulation(run_cfg, trace, scenario, models, elastic_cfg);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return reports;
}

std::vector<utility::UtilityModel> train_models(const Scenario& scenario, const utility::TrainConfig& cfg) {
    std::vector<utility::UtilityModel> models;
    models.reserve(scenario.cameras);
    for (int i = 0; i < scenario.cameras; ++i) {
        utility::TrainStats stats;
        models.push_back(utility::train_utility(scenario.profiling.at(i), cfg, &stats));
        io::log(io::LogLevel::info,
                "camera " + std::to_string(i) + " train_mse=" + io::format_double(stats.train_mse));
    }
    return models;
}

std::string slot_records_csv(const SimReport& report) {
    std::string out = "slot,bandwidth_kbps,d_kbit,effective_budget_kbps,predicted_utility,realized_utility";
    const std::size_t n = report.slots.empty() ? 0 : report.slots.front().chosen.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::string cam = "cam" + std::to_string(i);
        out += "," + cam + "_bitrate," + cam + "_resolution," + cam + "_accuracy";
    }
    out += "\n";
    for (const SlotRecord& s : report.slots) {
        out += std::to_string(s.slot) + "," + io::format_double(s.bandwidth_kbps) + "," +
               io::format_double(s.d_kbit) + "," + io::format_double(s.effective_budget_kbps) + "," +
               io::format_double(s.predicted_utility) + "," + io::format_double(s.realized_utility);
        for (const alloc::ChosenConfig& ch : s.chosen)
            out += "," + std::to_string(ch.bitrate_kbps) + "," + std::to_string(ch.resolution) + "," +
                   io::format_double(ch.predicted_accuracy);
        out += "\n";
    }
    return out;
}

std::string comparison_csv(const std::vector<SimReport>& reports) {
    std::string out =
        "scheduler,mean_utility,mean_total_bitrate_kbps,borrow_slots,borrowed_kbit,repaid_kbit\n";
    for (const SimReport& r : reports)
        out += r.scheduler + "," + io::format_double(r.mean_utility) + "," +
               io::format_double(r.mean_total_bitrate_kbps) + "," + std::to_string(r.borrow_slots) + "," +
               io::format_double(r.borrowed_kbit) + "," + io::format_double(r.repaid_kbit) + "\n";
    return out;
}

std::string report_summary_json(const SimReport& report) {
    nlohmann::json j;
    j["scheduler"] = report.scheduler;
    j["slots"] = report.slots.size();
    j["mean_utility"] = report.mean_utility;
    j["mean_total_bitrate_kbps"] = report.mean_total_bitrate_kbps;
    j["per_camera_mean_accuracy"] = report.per_camera_mean_accuracy;
    j["borrow_slots"] = report.borrow_slots;
    j["borrowed_kbit"] = report.borrowed_kbit;
    j["repaid_kbit"] = report.repaid_kbit;
    j["final_budget_used_kbit"] = report.final_budget_used_kbit;
    return j.dump(2) + "\n";
}

BandwidthTrace load_trace_csv(const std::filesystem::path& path) {
    io::CsvTable csv = io::read_csv(path);
    int c_slot = csv.column("slot"), c_kbps = csv.column("kbps");
    if (c_slot < 0 || c_kbps < 0) throw std::runtime_error(path.string() + ": expected header slot,kbps");
    BandwidthTrace trace;
    trace.name = path.stem().string();
    trace.kbps.resize(csv.rows.size(), 0.0);
    for (const auto& row : csv.rows) {
        long slot = io::parse_long(row[c_slot]);
        double kbps = io::parse_double(row[c_kbps]);
        if (slot < 0 || slot >= static_cast<long>(trace.kbps.size()))
            throw std::runtime_error(path.string() + ": slot indices must be dense 0..n-1");
        if (kbps <= 0.0) throw std::runtime_error(path.string() + ": bandwidth samples must be positive");
        trace.kbps[slot] = kbps;
    }
    for (double v : trace.kbps)
        if (v <= 0.0) throw std::runtime_error(path.string() + ": missing slot samples");
    return trace;
}

Scenario load_scenario_dir(const std::filesystem::path& dir) {
    Scenario sc;

    io::CsvTable gt = io::read_csv(dir / "ground_truth.csv");
    int g_slot = gt.column("slot"), g_cam = gt.column("camera"), g_b = gt.column("bitrate");
    int g_r = gt.column("resolution"), g_acc = gt.column("accuracy");
    if (g_slot < 0 || g_cam < 0 || g_b < 0 || g_r < 0 || g_acc < 0)
        throw std::runtime_error("ground_truth.csv: expected header slot,camera,bitrate,resolution,accuracy");

    int max_slot = -1, max_cam = -1;
    std::vector<int> bitrates, resolutions;
    for (const auto& row : gt.rows) {
        max_slot = std::max(max_slot, static_cast<int>(io::parse_long(row[g_slot])));
        max_cam = std::max(max_cam, static_cast<int>(io::parse_long(row[g_cam])));
        int b = static_cast<int>(io::parse_long(row[g_b]));
        int r = static_cast<int>(io::parse_long(row[g_r]));
        if (std::find(bitrates.begin(), bitrates.end(), b) == bitrates.end()) bitrates.push_back(b);
        if (std::find(resolutions.begin(), resolutions.end(), r) == resolutions.end()) resolutions.push_back(r);
    }
    if (max_slot < 0) throw std::runtime_error("ground_truth.csv is empty");
    std::sort(bitrates.begin(), bitrates.end());
    std::sort(resolutions.begin(), resolutions.end());

    sc.cameras = max_cam + 1;
    sc.horizon = max_slot + 1;
    sc.bitrates_kbps = bitrates;
    sc.resolutions = resolutions;
    sc.streams.resize(sc.cameras);

    const std::size_t cells = bitrates.size() * resolutions.size();
    utility::UtilityTable empty_table;
    empty_table.bitrates_kbps = bitrates;
    empty_table.resolutions = resolutions;
    empty_table.values.assign(cells, -1.0);
    for (int i = 0; i < sc.cameras; ++i) {
        sc.streams[i].camera_id = i;
        sc.streams[i].a.assign(sc.horizon, -1.0);
        sc.streams[i].c.assign(sc.horizon, -1.0);
        sc.streams[i].ground_truth.assign(sc.horizon, empty_table);
    }
    for (const auto& row : gt.rows) {
        int slot = static_cast<int>(io::parse_long(row[g_slot]));
        int cam = static_cast<int>(io::parse_long(row[g_cam]));
        int bi = index_of(bitrates, static_cast<int>(io::parse_long(row[g_b])), "bitrate");
        int ri = index_of(resolutions, static_cast<int>(io::parse_long(row[g_r])), "resolution");
        sc.streams[cam].ground_truth[slot].values[static_cast<std::size_t>(bi) * resolutions.size() + ri] =
            io::parse_double(row[g_acc]);
    }
    for (const FeatureStream& stream : sc.streams)
        for (const utility::UtilityTable& table : stream.ground_truth)
            for (double v : table.values)
                if (v < 0.0) throw std::runtime_error("ground_truth.csv does not cover the full grid");

    io::CsvTable feat = io::read_csv(dir / "features.csv");
    int f_slot = feat.column("slot"), f_cam = feat.column("camera"), f_a = feat.column("a"),
        f_c = feat.column("c");
    if (f_slot < 0 || f_cam < 0 || f_a < 0 || f_c < 0)
        throw std::runtime_error("features.csv: expected header slot,camera,a,c");
    for (const auto& row : feat.rows) {
        int slot = static_cast<int>(io::parse_long(row[f_slot]));
        int cam = static_cast<int>(io::parse_long(row[f_cam]));
        if (slot < 0 || slot >= sc.horizon || cam < 0 || cam >= sc.cameras)
            throw std::runtime_error("features.csv: slot/camera out of range");
        double a = io::parse_double(row[f_a]), c = io::parse_double(row[f_c]);
        if (a < 0.0 || a > 1.0 || c < 0.0 || c > 1.0)
            throw std::runtime_error("features.csv: a and c must lie in [0,1]");
        sc.streams[cam].a[slot] = a;
        sc.streams[cam].c[slot] = c;
    }
    for (const FeatureStream& stream : sc.streams)
        for (int t = 0; t < sc.horizon; ++t)
            if (stream.a[t] < 0.0 || stream.c[t] < 0.0)
                throw std::runtime_error("features.csv: missing (slot,camera) rows");

    auto profiling = utility::load_profiling_csv(dir / "profiling.csv");
    sc.profiling.resize(sc.cameras);
    sc.threshold_profiles.resize(sc.cameras);
    for (int i = 0; i < sc.cameras; ++i) {
        auto it = profiling.find(i);
        if (it == profiling.end()) throw std::runtime_error("profiling.csv: missing camera " + std::to_string(i));
        sc.profiling[i] = it->second;
        sc.threshold_profiles[i] = elastic::profile_from_samples(i, it->second, bitrates);
    }
    return sc;
}

void write_scenario_dir(const std::filesystem::path& dir, const Scenario& scenario) {
    std::filesystem::create_directories(dir);

    std::string features = "slot,camera,a,c\n";
    for (int t = 0; t < scenario.horizon; ++t)
        for (int i = 0; i < scenario.cameras; ++i)
            features += std::to_string(t) + "," + std::to_string(i) + "," +
                        io::format_double(scenario.streams[i].a[t]) + "," +
                        io::format_double(scenario.streams[i].c[t]) + "\n";
    io::atomic_write(dir / "features.csv", features);

    std::string gt = "slot,camera,bitrate,resolution,accuracy\n";
    for (int t = 0; t < scenario.horizon; ++t)
        for (int i = 0; i < scenario.cameras; ++i)
            for (std::size_t bi = 0; bi < scenario.bitrates_kbps.size(); ++bi)
                for (std::size_t ri = 0; ri < scenario.resolutions.size(); ++ri)
                    gt += std::to_string(t) + "," + std::to_string(i) + "," +
                          std::to_string(scenario.bitrates_kbps[bi]) + "," +
                          std::to_string(scenario.resolutions[ri]) + "," +
                          io::format_double(scenario.streams[i].ground_truth[t].at(
                              static_cast<int>(bi), static_cast<int>(ri))) +
                          "\n";
    io::atomic_write(dir / "ground_truth.csv", gt);

    std::string prof = "camera,a,c,bitrate_kbps,resolution,accuracy\n";
    for (int i = 0; i < scenario.cameras; ++i)
        for (const utility::ProfilingSample& s : scenario.profiling[i])
            prof += std::to_string(i) + "," + io::format_double(s.a) + "," + io::format_double(s.c) + "," +
                    io::format_double(s.bitrate_kbps) + "," + io::format_double(s.resolution) + "," +
                    io::format_double(s.accuracy) + "\n";
    io::atomic_write(dir / "profiling.csv", prof);
}

}  // namespace roistream::sim
