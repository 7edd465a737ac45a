// fcdtt: floating-car travel-time pipeline driver.
// Subcommands: synth, preprocess, train, evaluate.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fcdtt/errors.hpp"
#include "fcdtt/eval.hpp"
#include "fcdtt/io.hpp"
#include "fcdtt/network.hpp"
#include "fcdtt/pipeline.hpp"
#include "fcdtt/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fcdtt;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

json load_config(const std::string &path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error &e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
}

template <typename T>
T cfg_get(const json &section, const std::string &key, T fallback) {
    if (section.contains(key)) return section.at(key).get<T>();
    return fallback;
}

SynthConfig parse_synth_config(const json &section, std::optional<std::uint64_t> seed_override) {
    SynthConfig cfg;
    cfg.n_links = cfg_get(section, "n_links", cfg.n_links);
    cfg.link_length_m = cfg_get(section, "link_length_m", cfg.link_length_m);
    cfg.n_days = cfg_get(section, "n_days", cfg.n_days);
    cfg.paths_per_day = cfg_get(section, "paths_per_day", cfg.paths_per_day);
    cfg.sample_interval_s = cfg_get(section, "sample_interval_s", cfg.sample_interval_s);
    cfg.gps_noise_sigma_m = cfg_get(section, "gps_noise_sigma_m", cfg.gps_noise_sigma_m);
    cfg.incident_prob = cfg_get(section, "incident_prob", cfg.incident_prob);
    cfg.incident_scale_s = cfg_get(section, "incident_scale_s", cfg.incident_scale_s);
    cfg.obs_noise_sigma_s = cfg_get(section, "obs_noise_sigma_s", cfg.obs_noise_sigma_s);
    cfg.stop_injection_prob = cfg_get(section, "stop_injection_prob", cfg.stop_injection_prob);
    cfg.seed = cfg_get(section, "seed", cfg.seed);
    cfg.base_link_time_s = cfg_get(section, "base_link_time_s", cfg.base_link_time_s);
    cfg.sample_jitter_frac = cfg_get(section, "sample_jitter_frac", cfg.sample_jitter_frac);
    cfg.stop_cluster_fixes = cfg_get(section, "stop_cluster_fixes", cfg.stop_cluster_fixes);
    cfg.stop_cluster_radius_m =
        cfg_get(section, "stop_cluster_radius_m", cfg.stop_cluster_radius_m);
    cfg.window_start_hour = cfg_get(section, "window_start_hour", cfg.window_start_hour);
    cfg.window_len_s = cfg_get(section, "window_len_s", cfg.window_len_s);
    if (seed_override) cfg.seed = *seed_override;
    if (cfg.n_links < 1 || cfg.n_days < 1 || cfg.paths_per_day < 1 ||
        cfg.link_length_m <= 0.0 || cfg.sample_interval_s < 1.0 ||
        cfg.incident_prob < 0.0 || cfg.incident_prob > 1.0 ||
        cfg.stop_injection_prob < 0.0 || cfg.stop_injection_prob > 1.0) {
        throw ConfigError("synth: invalid configuration values");
    }
    return cfg;
}

std::string day_id_of(int day) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "day_%03d", day);
    return buf;
}

int cmd_synth(const json &config, const std::string &out_dir,
              std::optional<std::uint64_t> seed_override) {
    SynthConfig cfg = parse_synth_config(config.value("synth", json::object()), seed_override);
    fs::create_directories(fs::path(out_dir) / "traces");
    auto [net, truth] = generate_truth(cfg);
    write_text_file((fs::path(out_dir) / "network.json").string(), network_to_json(net));
    write_truth((fs::path(out_dir) / "truth.json").string(), truth);
    for (int d = 0; d < cfg.n_days; ++d) {
        std::vector<Trace> traces = generate_day_traces(net, truth, d, cfg);
        std::string file = (fs::path(out_dir) / "traces" / (day_id_of(d) + ".csv")).string();
        write_traces_csv(file, traces);
        int fixes = 0;
        for (const Trace &tr : traces) fixes += static_cast<int>(tr.fixes.size());
        std::cout << day_id_of(d) << ": " << traces.size() << " traces, " << fixes
                  << " fixes\n";
    }
    return 0;
}

PreprocessOptions parse_preprocess_options(const json &section) {
    PreprocessOptions opts;
    opts.stop.d_max_m = cfg_get(section, "d_max_m", opts.stop.d_max_m);
    opts.stop.n_max = cfg_get(section, "n_max", opts.stop.n_max);
    opts.max_snap_m = cfg_get(section, "max_snap_m", opts.max_snap_m);
    opts.max_gap_s = cfg_get(section, "max_gap_s", opts.max_gap_s);
    opts.window_start_hour = cfg_get(section, "window_start_hour", opts.window_start_hour);
    opts.window_end_hour = cfg_get(section, "window_end_hour", opts.window_end_hour);
    if (opts.stop.d_max_m <= 0.0 || opts.stop.n_max < 2 || opts.max_snap_m <= 0.0 ||
        opts.max_gap_s <= 0.0) {
        throw ConfigError("preprocess: invalid configuration values");
    }
    return opts;
}

int cmd_preprocess(const json &config, const std::string &out_dir,
                   const std::string &match_dump_path) {
    PreprocessOptions opts = parse_preprocess_options(config.value("preprocess", json::object()));
    RoadNetwork net = load_network((fs::path(out_dir) / "network.json").string());

    std::vector<MatchedFix> dump;
    if (!match_dump_path.empty()) opts.match_dump = &dump;

    std::vector<std::string> trace_files;
    for (const auto &entry : fs::directory_iterator(fs::path(out_dir) / "traces")) {
        if (entry.path().extension() == ".csv") trace_files.push_back(entry.path().string());
    }
    std::sort(trace_files.begin(), trace_files.end());
    if (trace_files.empty()) {
        throw ValidationError("preprocess: no trace files in " +
                              (fs::path(out_dir) / "traces").string());
    }

    std::vector<DayBlock> blocks;
    PreprocessCounts totals;
    for (const std::string &file : trace_files) {
        PreprocessCounts counts;
        std::vector<Trace> traces = parse_traces(file);
        std::vector<PathIntegral> pis = preprocess_traces(traces, net, opts, &counts);
        std::string day = fs::path(file).stem().string();
        if (!pis.empty()) {
            blocks.push_back(DayBlock{day, std::move(pis)});
        }
        std::cout << day << ": raw fixes " << counts.raw_fixes << ", valid " << counts.valid_fixes
                  << ", matched " << counts.matched_fixes << ", path integrals "
                  << counts.integrals << "\n";
        totals.raw_fixes += counts.raw_fixes;
        totals.valid_fixes += counts.valid_fixes;
        totals.matched_fixes += counts.matched_fixes;
        totals.integrals += counts.integrals;
    }
    std::cout << "total: raw fixes " << totals.raw_fixes << ", processed path integrals "
              << totals.integrals << "\n";
    if (totals.integrals == 0) {
        throw ValidationError("preprocess: 0 path integrals survived");
    }
    write_day_blocks((fs::path(out_dir) / "integrals.jsonl").string(), blocks);
    if (!match_dump_path.empty()) write_match_dump(match_dump_path, dump);
    return 0;
}

int cmd_train(const json &config, const std::string &out_dir,
              std::optional<std::uint64_t> seed_override) {
    json section = config.value("train", json::object());
    std::uint64_t seed = cfg_get<std::uint64_t>(section, "seed", 1);
    if (seed_override) seed = *seed_override;
    int k = cfg_get(section, "k_folds", 5);
    int n_train1 = cfg_get(section, "n_train1", 10);
    int n_train2 = cfg_get(section, "n_train2", 6);
    int n_test = cfg_get(section, "n_test", 6);

    RoadNetwork net = load_network((fs::path(out_dir) / "network.json").string());
    std::vector<DayBlock> blocks =
        read_day_blocks((fs::path(out_dir) / "integrals.jsonl").string());
    std::sort(blocks.begin(), blocks.end(),
              [](const DayBlock &a, const DayBlock &b) { return a.day_id < b.day_id; });

    SplitResult split = random_split(blocks, n_train1, n_train2, n_test, seed);
    Eigen::MatrixXd diff = build_difference_matrix(net.size());

    std::vector<double> grid1 = cfg_get(section, "lambda1_grid", std::vector<double>{});
    if (grid1.empty()) grid1 = log_grid(1e-2, 1e3, 25);
    KfoldResult fit = kfold_cv_lambda1(split.train1, net, diff, grid1, k, seed);

    std::vector<double> grid2 = cfg_get(section, "lambda2_grid", std::vector<double>{});
    if (grid2.empty()) {
        std::vector<PathIntegral> pooled;
        for (const DayBlock &b : split.train2) {
            pooled.insert(pooled.end(), b.paths.begin(), b.paths.end());
        }
        if (pooled.empty()) {
            throw ConfigError("train: no train2 paths to derive the lambda2 grid");
        }
        double lmax = lasso_lambda_max(build_observations(pooled, net), fit.model.theta);
        if (lmax <= 0.0) lmax = 1.0;
        grid2 = log_grid(1e-3 * lmax, lmax, 25);
    }
    CvCurve curve2 = loo_cv_lambda2(split.train2, net, fit.model, grid2);

    std::vector<PathIntegral> training_paths;
    for (const DayBlock &b : split.train1) {
        training_paths.insert(training_paths.end(), b.paths.begin(), b.paths.end());
    }
    for (const DayBlock &b : split.train2) {
        training_paths.insert(training_paths.end(), b.paths.begin(), b.paths.end());
    }

    ModelFile mf;
    mf.model = fit.model;
    mf.lambda2 = curve2.best_lambda;
    mf.n_links = net.size();
    mf.cv_lambda1 = fit.curve;
    mf.cv_lambda2 = curve2;
    mf.baseline_theta = median_backproject(training_paths, net);
    write_model((fs::path(out_dir) / "model.json").string(), mf);

    SplitManifest manifest;
    manifest.seed = seed;
    for (const DayBlock &b : split.train1) manifest.train1.push_back(b.day_id);
    for (const DayBlock &b : split.train2) manifest.train2.push_back(b.day_id);
    for (const DayBlock &b : split.test) manifest.test.push_back(b.day_id);
    write_split_manifest((fs::path(out_dir) / "split.json").string(), manifest);

    std::cout << "lambda1 = " << fit.curve.best_lambda << " (cv error "
              << *std::min_element(fit.curve.errors.begin(), fit.curve.errors.end()) << ")\n"
              << "lambda2 = " << curve2.best_lambda << " (cv error "
              << *std::min_element(curve2.errors.begin(), curve2.errors.end()) << ")\n";
    if (!fit.model.clamped_links.empty()) {
        std::cout << "note: nonnegativity clamp fired on " << fit.model.clamped_links.size()
                  << " links\n";
    }
    return 0;
}

int cmd_evaluate(const json &config, const std::string &out_dir,
                 std::optional<std::uint64_t> seed_override) {
    json section = config.value("evaluate", json::object());
    RoadNetwork net = load_network((fs::path(out_dir) / "network.json").string());
    std::vector<DayBlock> blocks =
        read_day_blocks((fs::path(out_dir) / "integrals.jsonl").string());
    ModelFile mf = read_model((fs::path(out_dir) / "model.json").string());
    SplitManifest manifest = read_split_manifest((fs::path(out_dir) / "split.json").string());

    std::set<std::string> train_days(manifest.train1.begin(), manifest.train1.end());
    train_days.insert(manifest.train2.begin(), manifest.train2.end());
    std::set<std::string> test_days(manifest.test.begin(), manifest.test.end());
    for (const std::string &d : test_days) {
        if (train_days.count(d) > 0) {
            throw ConfigError("evaluate: day " + d + " appears in both training and test sets");
        }
    }

    std::vector<DayBlock> test_blocks;
    for (const DayBlock &b : blocks) {
        if (test_days.count(b.day_id) > 0) test_blocks.push_back(b);
    }
    if (test_blocks.empty()) {
        throw ConfigError("evaluate: no test blocks available");
    }

    double lambda2 = cfg_get(section, "lambda2_override", mf.lambda2);
    std::vector<PredictionRecord> records;
    EvaluationReport report =
        evaluate_test(test_blocks, net, mf.model, lambda2, mf.baseline_theta, &records);
    report.seed = seed_override.value_or(manifest.seed);
    write_report((fs::path(out_dir) / "report.json").string(), report);
    write_predictions_csv((fs::path(out_dir) / "predictions.csv").string(), records);

    for (const auto &[name, stats] : report.algorithms) {
        std::cout << name << ": error " << stats.error_rate * 100.0 << "% +- " << stats.std_dev
                  << " (n=" << stats.n << ", ci95 [" << stats.ci95[0] * 100.0 << ", "
                  << stats.ci95[1] * 100.0 << "])\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Floating-car travel-time estimation pipeline"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string match_dump_path;
    std::optional<std::uint64_t> seed_override;
    int threads = 1;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--out", out_dir, "Working/output directory");
        sub->add_option("--seed", seed_override, "Override the configured seed");
        sub->add_option("--threads", threads, "Worker threads (results are thread-count independent)");
    };

    CLI::App *synth = app.add_subcommand("synth", "Generate a synthetic corridor dataset");
    add_common(synth);
    CLI::App *preprocess =
        app.add_subcommand("preprocess", "Traces -> cleaned, matched path integrals");
    add_common(preprocess);
    preprocess->add_option("--dump-matches", match_dump_path,
                           "Write matched fixes as JSONL to this file");
    CLI::App *train = app.add_subcommand("train", "Two-stage CV fit of theta, lambda1, lambda2");
    add_common(train);
    CLI::App *evaluate = app.add_subcommand("evaluate", "Compare the three algorithms on test days");
    add_common(evaluate);

    CLI11_PARSE(app, argc, argv);

    try {
        json config = load_config(config_path);
        if (synth->parsed()) return cmd_synth(config, out_dir, seed_override);
        if (preprocess->parsed()) return cmd_preprocess(config, out_dir, match_dump_path);
        if (train->parsed()) return cmd_train(config, out_dir, seed_override);
        if (evaluate->parsed()) return cmd_evaluate(config, out_dir, seed_override);
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ValidationError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
