#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fcdtt/estimator.hpp"

namespace fcdtt {

// One day's worth of path integrals.
struct DayBlock {
    std::string day_id;
    std::vector<PathIntegral> paths;
};

struct CvCurve {
    std::vector<double> lambdas;
    std::vector<double> errors;  // mean CV error per lambda, fraction of true
    double best_lambda = 0.0;    // arg-min; ties broken toward larger lambda
};

struct AlgorithmStats {
    double error_rate = 0.0;  // mean |pred - true| / true
    double std_dev = 0.0;
    int n = 0;
    std::array<double, 2> ci95 = {0.0, 0.0};
};

struct EvaluationReport {
    std::map<std::string, AlgorithmStats> algorithms;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    std::uint64_t seed = 0;
};

// One prediction record, for the optional per-prediction CSV.
struct PredictionRecord {
    std::string day_id;
    std::string algorithm;
    double predicted = 0.0;
    double true_tt = 0.0;
    double error = 0.0;
};

// |predicted - true| / true. Throws on true_tt <= 0.
double error_rate(double predicted, double true_tt);

std::array<double, 2> ci95_interval(double mean, double std_dev, int n);

struct KfoldResult {
    CvCurve curve;
    HistoricModel model;  // refit on all training paths at best lambda
};

// 5-fold-style CV for lambda1: paths pooled across blocks, partitioned into k
// folds by a seeded shuffle.
KfoldResult kfold_cv_lambda1(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                             const Eigen::MatrixXd &diff, const std::vector<double> &lambda_grid,
                             int k, std::uint64_t seed);

// Leave-one-out CV for lambda2: per day and held-out path, fit the LASSO on
// the rest of the day's paths and predict the held-out travel time with
// theta + delta. Days with fewer than 2 paths are skipped.
CvCurve loo_cv_lambda2(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                       const HistoricModel &model, const std::vector<double> &lambda_grid);

// Leave-one-out comparison of the three algorithms on held-out days.
EvaluationReport evaluate_test(const std::vector<DayBlock> &blocks, const RoadNetwork &net,
                               const HistoricModel &model, double lambda2,
                               const std::vector<double> &baseline_theta,
                               std::vector<PredictionRecord> *records = nullptr);

struct SplitResult {
    std::vector<DayBlock> train1;
    std::vector<DayBlock> train2;
    std::vector<DayBlock> test;
};

// Seeded disjoint partition of day blocks into (train1, train2, test).
SplitResult random_split(const std::vector<DayBlock> &blocks, int n_train1, int n_train2,
                         int n_test, std::uint64_t seed);

// Helper grids: log-spaced values, endpoints inclusive.
std::vector<double> log_grid(double lo, double hi, int count);

}  // namespace fcdtt
