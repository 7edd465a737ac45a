#include "fcdtt/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "fcdtt/errors.hpp"
#include "fcdtt/rng.hpp"

namespace fcdtt {

namespace {

double mean_of(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double> &v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

AlgorithmStats stats_of(const std::vector<double> &errors) {
    AlgorithmStats s;
    s.n = static_cast<int>(errors.size());
    if (s.n == 0) return s;
    s.error_rate = mean_of(errors);
    s.std_dev = sample_std(errors, s.error_rate);
    s.ci95 = ci95_interval(s.error_rate, s.std_dev, s.n);
    return s;
}

// Arg-min over the grid with ties broken toward larger lambda. Assumes the
// grid is scanned in its given order (ascending by convention).
double pick_best(const CvCurve &curve) {
    double best_err = std::numeric_limits<double>::infinity();
    double best_lambda = curve.lambdas.front();
    for (std::size_t i = 0; i < curve.lambdas.size(); ++i) {
        if (curve.errors[i] <= best_err) {
            best_err = curve.errors[i];
            best_lambda = curve.lambdas[i];
        }
    }
    return best_lambda;
}

std::vector<PathIntegral> pooled_paths(const std::vector<DayBlock> &blocks) {
    std::vector<PathIntegral> all;
    for (const DayBlock &b : blocks) {
        all.insert(all.end(), b.paths.begin(), b.paths.end());
    }
    return all;
}

}  // namespace

double error_rate(double predicted, double true_tt) {
    if (!(true_tt > 0.0)) {
        throw std::invalid_argument("error_rate: true travel time must be positive");
    }
    return std::fabs(predicted - true_tt) / true_tt;
}

std::array<double, 2> ci95_interval(double mean, double std_dev, int n) {
    double half = 1.96 * std_dev / std::sqrt(static_cast<double>(n));
    return {mean - half, mean + half};
}

KfoldResult kfold_cv_lambda1(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                             const Eigen::MatrixXd &diff, const std::vector<double> &lambda_grid,
                             int k, std::uint64_t seed) {
    if (lambda_grid.empty()) {
        throw ConfigError("kfold_cv_lambda1: empty lambda grid");
    }
    std::vector<PathIntegral> all = pooled_paths(blocks);
    if (static_cast<int>(all.size()) < k || k < 2) {
        throw ConfigError("kfold_cv_lambda1: need at least k=" + std::to_string(k) +
                          " paths, have " + std::to_string(all.size()));
    }

    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.stream("cv-folds").shuffle(order);
    std::vector<int> fold_of(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        fold_of[order[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    }

    KfoldResult result;
    result.curve.lambdas = lambda_grid;
    for (double lambda : lambda_grid) {
        double fold_err_sum = 0.0;
        for (int f = 0; f < k; ++f) {
            std::vector<PathIntegral> train, held;
            for (std::size_t i = 0; i < all.size(); ++i) {
                (fold_of[i] == f ? held : train).push_back(all[i]);
            }
            if (train.empty() || held.empty()) {
                throw ConfigError("kfold_cv_lambda1: empty fold");
            }
            HistoricModel m = solve_ridge(build_observations(train, net), diff, lambda);
            double err = 0.0;
            for (const PathIntegral &pi : held) {
                err += error_rate(predict_travel_time(pi.coverage, m.theta), pi.travel_time_s());
            }
            fold_err_sum += err / static_cast<double>(held.size());
        }
        result.curve.errors.push_back(fold_err_sum / static_cast<double>(k));
    }
    result.curve.best_lambda = pick_best(result.curve);
    result.model = solve_ridge(build_observations(all, net), diff, result.curve.best_lambda);
    return result;
}

CvCurve loo_cv_lambda2(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                       const HistoricModel &model, const std::vector<double> &lambda_grid) {
    if (lambda_grid.empty()) {
        throw ConfigError("loo_cv_lambda2: empty lambda grid");
    }
    CvCurve curve;
    curve.lambdas = lambda_grid;
    for (double lambda : lambda_grid) {
        std::vector<double> errors;
        for (const DayBlock &block : blocks) {
            if (block.paths.size() < 2) {
                if (lambda == lambda_grid.front()) {
                    std::cerr << "warning: day " << block.day_id
                              << " has fewer than 2 paths, skipped in lambda2 CV\n";
                }
                continue;
            }
            for (std::size_t held = 0; held < block.paths.size(); ++held) {
                std::vector<PathIntegral> rest;
                for (std::size_t j = 0; j < block.paths.size(); ++j) {
                    if (j != held) rest.push_back(block.paths[j]);
                }
                IncidentEstimate inc =
                    solve_lasso(build_observations(rest, net), model.theta, lambda);
                const PathIntegral &pi = block.paths[held];
                double pred = predict_travel_time(pi.coverage, model.theta, &inc.delta);
                errors.push_back(error_rate(pred, pi.travel_time_s()));
            }
        }
        if (errors.empty()) {
            throw ConfigError("loo_cv_lambda2: no usable (day, path) pairs");
        }
        curve.errors.push_back(mean_of(errors));
    }
    curve.best_lambda = pick_best(curve);
    return curve;
}

EvaluationReport evaluate_test(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                               const HistoricModel &model, double lambda2,
                               const std::vector<double> &baseline_theta,
                               std::vector<PredictionRecord> *records) {
    std::vector<double> err_historic, err_incidence, err_baseline;
    auto record = [&](const std::string &day, const char *algo, double pred, double truth) {
        if (records != nullptr) {
            records->push_back({day, algo, pred, truth, error_rate(pred, truth)});
        }
    };

    for (const DayBlock &block : blocks) {
        for (std::size_t held = 0; held < block.paths.size(); ++held) {
            const PathIntegral &pi = block.paths[held];
            double truth = pi.travel_time_s();

            double pred_h = predict_travel_time(pi.coverage, model.theta);
            err_historic.push_back(error_rate(pred_h, truth));
            record(block.day_id, "historic", pred_h, truth);

            std::vector<PathIntegral> rest;
            for (std::size_t j = 0; j < block.paths.size(); ++j) {
                if (j != held) rest.push_back(block.paths[j]);
            }
            double pred_i = pred_h;  // no probe data for the day: delta = 0
            if (!rest.empty()) {
                IncidentEstimate inc =
                    solve_lasso(build_observations(rest, net), model.theta, lambda2);
                pred_i = predict_travel_time(pi.coverage, model.theta, &inc.delta);
            }
            err_incidence.push_back(error_rate(pred_i, truth));
            record(block.day_id, "historic+incidence", pred_i, truth);

            try {
                double pred_b = predict_baseline(pi.coverage, baseline_theta);
                err_baseline.push_back(error_rate(pred_b, truth));
                record(block.day_id, "median_backproject", pred_b, truth);
            } catch (const ValidationError &e) {
                std::cerr << "warning: baseline prediction skipped (" << e.what() << ")\n";
            }
        }
    }

    EvaluationReport report;
    report.lambda1 = model.lambda1;
    report.lambda2 = lambda2;
    report.algorithms["historic"] = stats_of(err_historic);
    report.algorithms["historic+incidence"] = stats_of(err_incidence);
    report.algorithms["median_backproject"] = stats_of(err_baseline);
    return report;
}

SplitResult random_split(const std::vector<DayBlock> &blocks, int n_train1, int n_train2,
                         int n_test, std::uint64_t seed) {
    if (n_train1 < 0 || n_train2 < 0 || n_test < 0 ||
        n_train1 + n_train2 + n_test > static_cast<int>(blocks.size())) {
        throw ConfigError("random_split: sizes exceed available blocks (" +
                          std::to_string(blocks.size()) + ")");
    }
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.stream("day-split").shuffle(order);

    SplitResult split;
    int pos = 0;
    for (int i = 0; i < n_train1; ++i) split.train1.push_back(blocks[order[pos++]]);
    for (int i = 0; i < n_train2; ++i) split.train2.push_back(blocks[order[pos++]]);
    for (int i = 0; i < n_test; ++i) split.test.push_back(blocks[order[pos++]]);
    return split;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw ConfigError("log_grid: need count >= 1 and 0 < lo <= hi");
    }
    std::vector<double> grid;
    if (count == 1) {
        grid.push_back(hi);
        return grid;
    }
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < count; ++i) {
        grid.push_back(std::exp(llo + (lhi - llo) * i / (count - 1)));
    }
    return grid;
}

}  // namespace fcdtt
