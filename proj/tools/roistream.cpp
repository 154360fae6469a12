// roistream: block-based ROI detection, utility profiling, budgeted bitrate
// allocation, and a trace-driven multi-camera streaming simulator.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roistream/alloc.hpp"
#include "roistream/elastic.hpp"
#include "roistream/io.hpp"
#include "roistream/roidet.hpp"
#include "roistream/sim.hpp"
#include "roistream/utility.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roistream;

namespace {

json load_json(const fs::path& path) {
    return json::parse(io::read_file(path));
}

// ---------------------------------------------------------------- detect

struct DetectArgs {
    std::string frames_dir, oracle_csv, params_json, out_csv;
};

roidet::RoidetParams parse_roidet_params(const json& j, int& segment_frames) {
    roidet::RoidetParams p;
    p.canny_low = j.value("canny_low", p.canny_low);
    p.canny_high = j.value("canny_high", p.canny_high);
    p.block_rows = j.value("block_rows", p.block_rows);
    p.block_cols = j.value("block_cols", p.block_cols);
    p.motion_threshold = j.value("motion_threshold", p.motion_threshold);
    segment_frames = j.value("segment_frames", segment_frames);
    return p;
}

int run_detect(const DetectArgs& args) {
    int segment_frames = 10;
    roidet::RoidetParams params;
    if (!args.params_json.empty()) params = parse_roidet_params(load_json(args.params_json), segment_frames);
    if (segment_frames < 2) throw std::runtime_error("segment_frames must be >= 2");

    std::vector<fs::path> frame_files;
    for (const auto& entry : fs::directory_iterator(args.frames_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            frame_files.push_back(entry.path());
    std::sort(frame_files.begin(), frame_files.end());
    if (frame_files.size() < 2) throw std::runtime_error("need at least two .pgm frames");

    // Oracle rows are assigned to segments by frame index.
    io::CsvTable oracle = io::read_csv(args.oracle_csv);
    int o_frame = oracle.column("frame"), o_x = oracle.column("x"), o_y = oracle.column("y");
    int o_w = oracle.column("w"), o_h = oracle.column("h"), o_conf = oracle.column("confidence");
    if (o_frame < 0 || o_x < 0 || o_y < 0 || o_w < 0 || o_h < 0 || o_conf < 0)
        throw std::runtime_error("oracle CSV: expected header frame,x,y,w,h,confidence");
    std::map<int, std::vector<roidet::BoundingBox>> oracle_boxes;
    std::map<int, std::vector<double>> oracle_conf;
    for (const auto& row : oracle.rows) {
        int segment = static_cast<int>(io::parse_long(row[o_frame])) / segment_frames;
        oracle_boxes[segment].push_back({static_cast<int>(io::parse_long(row[o_x])),
                                         static_cast<int>(io::parse_long(row[o_y])),
                                         static_cast<int>(io::parse_long(row[o_w])),
                                         static_cast<int>(io::parse_long(row[o_h]))});
        oracle_conf[segment].push_back(io::parse_double(row[o_conf]));
    }

    std::string out = "segment,kind,x,y,w,h,a,c\n";
    int n_segments = 0;
    for (std::size_t start = 0; start + 1 < frame_files.size(); start += segment_frames) {
        std::size_t end = std::min(frame_files.size(), start + segment_frames);
        int segment = static_cast<int>(start) / segment_frames;
        std::vector<roidet::FrameGray> frames;
        frames.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) frames.push_back(io::read_pgm(frame_files[i]));

        auto boxes_it = oracle_boxes.find(segment);
        std::vector<roidet::BoundingBox> stationary =
            boxes_it == oracle_boxes.end() ? std::vector<roidet::BoundingBox>{} : boxes_it->second;
        roidet::RoiSet rois = roidet::roidet_segment(frames, stationary, params);

        for (const roidet::BoundingBox& b : rois.stationary)
            out += std::to_string(segment) + ",stationary," + std::to_string(b.x) + "," + std::to_string(b.y) +
                   "," + std::to_string(b.w) + "," + std::to_string(b.h) + ",,\n";
        for (const roidet::BoundingBox& b : rois.moving)
            out += std::to_string(segment) + ",moving," + std::to_string(b.x) + "," + std::to_string(b.y) +
                   "," + std::to_string(b.w) + "," + std::to_string(b.h) + ",,\n";

        double a = roidet::roi_area_ratio(rois);
        double c = 0.0;
        auto conf_it = oracle_conf.find(segment);
        if (conf_it != oracle_conf.end() && !conf_it->second.empty()) {
            for (double v : conf_it->second) c += v;
            c /= static_cast<double>(conf_it->second.size());
        }
        out += std::to_string(segment) + ",summary,,,,," + io::format_double(a) + "," +
               io::format_double(c) + "\n";
        ++n_segments;
    }

    io::atomic_write(args.out_csv, out);
    io::log(io::LogLevel::info, "wrote " + std::to_string(n_segments) + " segments to " + args.out_csv);
    return 0;
}

// ---------------------------------------------------------------- profile

utility::TrainConfig parse_train_config(const json& j) {
    utility::TrainConfig cfg;
    cfg.hidden_size = j.value("hidden_size", cfg.hidden_size);
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.batch_size = j.value("batch_size", cfg.batch_size);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.l2 = j.value("l2", cfg.l2);
    return cfg;
}

elastic::ElasticConfig parse_elastic_config(const json& j);

int run_profile(const std::string& data_csv, const std::string& config_json, const std::string& out_dir) {
    utility::TrainConfig cfg;
    elastic::ElasticConfig ecfg;
    if (!config_json.empty()) {
        json j = load_json(config_json);
        cfg = parse_train_config(j.contains("train") ? j["train"] : j);
        if (j.contains("elastic")) ecfg = parse_elastic_config(j["elastic"]);
    }
    auto per_camera = utility::load_profiling_csv(data_csv);
    if (per_camera.empty()) throw std::runtime_error("profiling CSV has no samples");

    fs::create_directories(out_dir);
    json report;
    std::vector<elastic::BitrateAccuracyProfile> profiles;
    for (const auto& [camera, samples] : per_camera) {
        utility::TrainStats stats;
        utility::UtilityModel model = utility::train_utility(samples, cfg, &stats);
        fs::path path = fs::path(out_dir) / ("camera_" + std::to_string(camera) + ".json");
        io::atomic_write(path, utility::model_to_json(model));
        report["train_mse"][std::to_string(camera)] = stats.train_mse;
        io::log(io::LogLevel::info, "camera " + std::to_string(camera) +
                                        " train_mse=" + io::format_double(stats.train_mse));
        profiles.push_back(elastic::profile_from_samples(camera, samples));
    }
    io::atomic_write(fs::path(out_dir) / "training_report.json", report.dump(2) + "\n");

    // bandwidth thresholds for the elastic mechanism, for inspection
    elastic::ThresholdReport thresholds;
    try {
        thresholds = elastic::compute_threshold_report(profiles, ecfg);
    } catch (const std::invalid_argument& e) {
        io::log(io::LogLevel::warn, std::string("skipping thresholds report: ") + e.what());
        return 0;
    }
    json tj;
    tj["tau_wl_kbps"] = thresholds.tau_wl_kbps;
    tj["tau_wh_kbps"] = thresholds.tau_wh_kbps;
    tj["sigma_high"] = ecfg.sigma_high;
    tj["sigma_low"] = ecfg.sigma_low;
    tj["cameras"] = json::array();
    for (const auto& cam : thresholds.cameras)
        tj["cameras"].push_back({{"camera_id", cam.camera_id},
                                 {"bitrates_kbps", cam.bitrates_kbps},
                                 {"accuracy_gap_std", cam.accuracy_gap_std},
                                 {"wl_bitrate_kbps", cam.wl_bitrate_kbps},
                                 {"wh_bitrate_kbps", cam.wh_bitrate_kbps}});
    io::atomic_write(fs::path(out_dir) / "thresholds.json", tj.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- allocate

utility::UtilityTable table_from_json(const json& cam, const char* values_key) {
    utility::UtilityTable table;
    table.bitrates_kbps = cam.at("bitrates").get<std::vector<int>>();
    table.resolutions = cam.at("resolutions").get<std::vector<int>>();
    for (const auto& row : cam.at(values_key)) {
        auto vals = row.get<std::vector<double>>();
        if (vals.size() != table.resolutions.size())
            throw std::runtime_error("table row length does not match resolutions");
        table.values.insert(table.values.end(), vals.begin(), vals.end());
    }
    if (table.values.size() != table.bitrates_kbps.size() * table.resolutions.size())
        throw std::runtime_error("table must have one row per bitrate");
    return table;
}

int run_allocate(const std::string& tables_json, double budget, const std::string& mode,
                 const std::string& out_path) {
    json j = load_json(tables_json);
    std::vector<alloc::CameraOptions> cameras;
    std::vector<utility::UtilityTable> average;
    for (const auto& cam : j.at("cameras")) {
        alloc::CameraOptions opt;
        opt.camera_id = cam.value("camera_id", static_cast<int>(cameras.size()));
        opt.weight = cam.value("weight", 1.0);
        opt.table = table_from_json(cam, "values");
        average.push_back(cam.contains("average_values") ? table_from_json(cam, "average_values")
                                                         : opt.table);
        cameras.push_back(std::move(opt));
    }
    if (cameras.empty()) throw std::runtime_error("no cameras in tables JSON");

    alloc::DpParams params{j.value("quantum", alloc::compute_quantum(cameras))};
    alloc::AllocationDecision decision;
    if (mode == "dp") decision = alloc::allocate_dp(cameras, budget, params);
    else if (mode == "fair") decision = alloc::allocate_fair(cameras, budget);
    else if (mode == "agnostic") decision = alloc::allocate_content_agnostic(cameras, average, budget, params);
    else throw std::runtime_error("unknown mode '" + mode + "'");

    json out;
    out["mode"] = mode;
    out["budget_kbps"] = budget;
    out["quantum_kbps"] = params.quantum_kbps;
    out["total_bitrate_kbps"] = decision.total_bitrate_kbps;
    out["total_utility"] = decision.total_utility;
    out["cameras"] = json::array();
    for (std::size_t i = 0; i < decision.cameras.size(); ++i) {
        const alloc::ChosenConfig& ch = decision.cameras[i];
        out["cameras"].push_back({{"camera_id", cameras[i].camera_id},
                                  {"bitrate_kbps", ch.bitrate_kbps},
                                  {"resolution", ch.resolution},
                                  {"predicted_accuracy", ch.predicted_accuracy}});
    }
    std::string text = out.dump(2) + "\n";
    if (out_path.empty()) std::cout << text;
    else io::atomic_write(out_path, text);
    return 0;
}

// ---------------------------------------------------------------- simulate / compare

struct SimArgs {
    std::string config_json, trace_arg, scenario_arg, out_dir;
};

struct SimSetup {
    sim::SimConfig cfg;
    elastic::ElasticConfig ecfg;
    sim::BandwidthTrace trace;
    sim::Scenario scenario;
    std::vector<utility::UtilityModel> models;
};

elastic::ElasticConfig parse_elastic_config(const json& j) {
    elastic::ElasticConfig cfg;
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.gamma_a = j.value("gamma_a", cfg.gamma_a);
    cfg.gamma_wl = j.value("gamma_wl", cfg.gamma_wl);
    cfg.gamma_wh = j.value("gamma_wh", cfg.gamma_wh);
    cfg.sigma_high = j.value("sigma_high", cfg.sigma_high);
    cfg.sigma_low = j.value("sigma_low", cfg.sigma_low);
    cfg.budget_cap_kbit = j.value("budget_cap_kbit", cfg.budget_cap_kbit);
    cfg.sigma_window = j.value("sigma_window", cfg.sigma_window);
    return cfg;
}

SimSetup prepare_simulation(const SimArgs& args) {
    SimSetup setup;
    json j = load_json(args.config_json);

    sim::SimConfig& cfg = setup.cfg;
    cfg.slot_length_s = j.value("slot_length_s", cfg.slot_length_s);
    cfg.frames_per_slot = j.value("frames_per_slot", cfg.frames_per_slot);
    if (j.contains("bitrates_kbps")) cfg.bitrates_kbps = j["bitrates_kbps"].get<std::vector<int>>();
    if (j.contains("resolutions")) cfg.resolutions = j["resolutions"].get<std::vector<int>>();
    if (j.contains("weights")) cfg.weights = j["weights"].get<std::vector<double>>();
    if (j.contains("scheduler")) cfg.scheduler = sim::scheduler_from_string(j["scheduler"].get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    cfg.horizon = j.value("horizon", cfg.horizon);
    cfg.oracle_model = j.value("oracle_model", cfg.oracle_model);
    if (j.contains("train")) cfg.train = parse_train_config(j["train"]);
    if (j.contains("elastic")) setup.ecfg = parse_elastic_config(j["elastic"]);
    setup.ecfg.slot_length_s = cfg.slot_length_s;

    int cameras = j.value("cameras", static_cast<int>(cfg.weights.size()));
    if (cameras <= 0) throw std::runtime_error("config must set 'cameras' or 'weights'");
    if (cfg.weights.empty()) cfg.weights.assign(cameras, 1.0);
    if (static_cast<int>(cfg.weights.size()) != cameras)
        throw std::runtime_error("'weights' length must equal 'cameras'");

    const std::string synth_prefix = "synthetic:";
    if (args.scenario_arg.rfind(synth_prefix, 0) == 0) {
        std::uint64_t seed = 0;
        try {
            seed = std::stoull(args.scenario_arg.substr(synth_prefix.size()));
        } catch (const std::exception&) {
            throw std::runtime_error("invalid scenario seed in '" + args.scenario_arg + "'");
        }
        setup.scenario = sim::generate_synthetic_scenario(seed, cameras, cfg.horizon, cfg.bitrates_kbps,
                                                          cfg.resolutions);
    } else {
        setup.scenario = sim::load_scenario_dir(args.scenario_arg);
        if (setup.scenario.cameras != cameras)
            throw std::runtime_error("scenario camera count does not match the config");
    }

    const std::string profile_prefix = "profile:";
    if (args.trace_arg.rfind(profile_prefix, 0) == 0) {
        setup.trace = sim::generate_trace(cfg.seed, sim::trace_profile_from_string(
                                                        args.trace_arg.substr(profile_prefix.size())),
                                          cfg.horizon);
    } else {
        setup.trace = sim::load_trace_csv(args.trace_arg);
    }

    if (!cfg.oracle_model) setup.models = sim::train_models(setup.scenario, cfg.train);
    return setup;
}

void write_report_files(const fs::path& out_dir, const sim::SimReport& report) {
    std::string tag = report.scheduler;
    std::replace(tag.begin(), tag.end(), '+', '_');
    io::atomic_write(out_dir / ("slots_" + tag + ".csv"), sim::slot_records_csv(report));
    io::atomic_write(out_dir / ("summary_" + tag + ".json"), sim::report_summary_json(report));
}

int run_simulate(const SimArgs& args, bool all_schedulers) {
    SimSetup setup = prepare_simulation(args);
    fs::create_directories(args.out_dir);

    std::string trace_csv = "slot,kbps\n";
    for (int t = 0; t < setup.cfg.horizon; ++t)
        trace_csv += std::to_string(t) + "," + io::format_double(setup.trace.kbps[t]) + "\n";
    io::atomic_write(fs::path(args.out_dir) / "trace.csv", trace_csv);

    if (all_schedulers) {
        std::vector<sim::SimReport> reports =
            sim::compare_schedulers(setup.cfg, setup.trace, setup.scenario, setup.models, setup.ecfg);
        io::atomic_write(fs::path(args.out_dir) / "comparison.csv", sim::comparison_csv(reports));
        for (const sim::SimReport& r : reports) write_report_files(args.out_dir, r);
        for (const sim::SimReport& r : reports)
            std::cout << r.scheduler << ": mean utility " << io::format_double(r.mean_utility) << "\n";
    } else {
        sim::SimReport report =
            sim::run_simulation(setup.cfg, setup.trace, setup.scenario, setup.models, setup.ecfg);
        write_report_files(args.out_dir, report);
        std::cout << report.scheduler << ": mean utility " << io::format_double(report.mean_utility)
                  << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Content-aware multi-camera streaming: ROI detection, utility profiling,\n"
                 "bandwidth allocation, and trace-driven simulation."};
    app.require_subcommand(1);

    DetectArgs detect_args;
    CLI::App* detect = app.add_subcommand("detect", "Detect ROIs over PGM frame segments");
    detect->add_option("--frames", detect_args.frames_dir, "Directory of .pgm frames")
        ->required()
        ->check(CLI::ExistingDirectory);
    detect->add_option("--oracle", detect_args.oracle_csv, "Stationary detections CSV")
        ->required()
        ->check(CLI::ExistingFile);
    detect->add_option("--params", detect_args.params_json, "Detector params JSON")->check(CLI::ExistingFile);
    detect->add_option("--out", detect_args.out_csv, "Output CSV path")->required();

    std::string profile_data, profile_config, profile_out;
    CLI::App* profile = app.add_subcommand("profile", "Train per-camera utility models");
    profile->add_option("--data", profile_data, "Profiling CSV")->required()->check(CLI::ExistingFile);
    profile->add_option("--config", profile_config, "Training config JSON")->check(CLI::ExistingFile);
    profile->add_option("--out", profile_out, "Output model directory")->required();

    std::string alloc_tables, alloc_mode = "dp", alloc_out;
    double alloc_budget = 0.0;
    CLI::App* allocate = app.add_subcommand("allocate", "Solve one bandwidth allocation");
    allocate->add_option("--tables", alloc_tables, "Utility tables JSON")->required()->check(CLI::ExistingFile);
    allocate->add_option("--budget", alloc_budget, "Budget in kbps")->required();
    allocate->add_option("--mode", alloc_mode, "dp|fair|agnostic")
        ->check(CLI::IsMember({"dp", "fair", "agnostic"}));
    allocate->add_option("--out", alloc_out, "Output JSON path (stdout when omitted)");

    SimArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Run one scheduler over a bandwidth trace");
    CLI::App* compare = app.add_subcommand("compare", "Run all four schedulers on identical inputs");
    for (CLI::App* cmd : {simulate, compare}) {
        cmd->add_option("--config", sim_args.config_json, "Simulation config JSON")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--trace", sim_args.trace_arg, "Trace CSV path or profile:low|medium|high")
            ->required();
        cmd->add_option("--scenario", sim_args.scenario_arg, "Scenario directory or synthetic:<seed>")
            ->required();
        cmd->add_option("--out", sim_args.out_dir, "Output directory")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (detect->parsed()) return run_detect(detect_args);
        if (profile->parsed()) return run_profile(profile_data, profile_config, profile_out);
        if (allocate->parsed()) return run_allocate(alloc_tables, alloc_budget, alloc_mode, alloc_out);
        if (simulate->parsed()) return run_simulate(sim_args, false);
        if (compare->parsed()) return run_simulate(sim_args, true);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
