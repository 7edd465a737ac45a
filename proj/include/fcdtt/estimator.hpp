#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "fcdtt/matcher.hpp"
#include "fcdtt/network.hpp"

namespace fcdtt {

// Y = X*theta + noise. Rows are path integrals, columns are links, entries
// are coverage fractions in [0, 1].
struct ObservationSet {
    Eigen::MatrixXd X;
    Eigen::VectorXd Y;  // observed travel times, seconds
};

struct HistoricModel {
    Eigen::VectorXd theta;      // nonnegative link travel times, seconds
    Eigen::VectorXd theta_raw;  // pre-clamp normal-equation solution
    double lambda1 = 0.0;
    std::vector<int> clamped_links;  // ids where the nonnegativity clamp fired
};

struct IncidentEstimate {
    Eigen::VectorXd delta;  // per-link deviations, seconds (may be negative)
    double lambda2 = 0.0;
    bool converged = true;
    int sweeps = 0;
    double kkt_residual = 0.0;
};

ObservationSet build_observations(const std::vector<PathIntegral> &paths,
                                  const RoadNetwork &net);

// Minimize ||Y - X*theta||^2 + lambda1*||D*theta||^2 via the normal equations;
// negative components are clamped to zero afterwards. A singular system falls
// back to the minimum-norm solution.
HistoricModel solve_ridge(const ObservationSet &obs, const Eigen::MatrixXd &diff,
                          double lambda1);

// ||2*X^T*(Y - X*theta)||_inf: smallest lambda2 at which delta = 0 is optimal.
double lasso_lambda_max(const ObservationSet &obs, const Eigen::VectorXd &theta);

// Minimize ||Y - X*(theta+delta)||^2 + lambda2*||delta||_1 by cyclic
// coordinate descent with soft-thresholding, delta initialized to zero.
IncidentEstimate solve_lasso(const ObservationSet &obs, const Eigen::VectorXd &theta,
                             double lambda2);

// Max-norm violation of the subgradient optimality conditions at delta.
double lasso_kkt_residual(const ObservationSet &obs, const Eigen::VectorXd &theta,
                          const Eigen::VectorXd &delta, double lambda2);

// Sum over links of coverage * (theta + delta); delta may be null.
double predict_travel_time(const std::map<int, double> &coverage,
                           const Eigen::VectorXd &theta,
                           const Eigen::VectorXd *delta = nullptr);

// Baseline: split each path's travel time across its links proportionally to
// covered length, normalize to full-link-equivalent samples, take per-link
// medians. Links with no samples are NaN.
std::vector<double> median_backproject(const std::vector<PathIntegral> &paths,
                                       const RoadNetwork &net);

// Baseline prediction; throws on any covered link with no backprojected sample.
double predict_baseline(const std::map<int, double> &coverage,
                        const std::vector<double> &baseline_theta);

}  // namespace fcdtt
