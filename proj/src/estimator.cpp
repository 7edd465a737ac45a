#include "fcdtt/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fcdtt/errors.hpp"

namespace fcdtt {

ObservationSet build_observations(const std::vector<PathIntegral> &paths,
                                  const RoadNetwork &net) {
    if (paths.empty()) {
        throw ValidationError("build_observations: empty path list");
    }
    const int n = net.size();
    ObservationSet obs;
    obs.X = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(paths.size()), n);
    obs.Y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(paths.size()));
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (const auto &[seg, frac] : paths[i].coverage) {
            if (seg < 0 || seg >= n) {
                throw ValidationError("build_observations: segment id " + std::to_string(seg) +
                                      " outside network of " + std::to_string(n) + " links");
            }
            obs.X(static_cast<Eigen::Index>(i), seg) = frac;
        }
        obs.Y(static_cast<Eigen::Index>(i)) = paths[i].travel_time_s();
    }
    return obs;
}

HistoricModel solve_ridge(const ObservationSet &obs, const Eigen::MatrixXd &diff,
                          double lambda1) {
    const Eigen::Index n = obs.X.cols();
    if (diff.rows() > 0 && diff.cols() != n) {
        throw std::invalid_argument("solve_ridge: difference matrix dimension mismatch");
    }
    Eigen::MatrixXd m = obs.X.transpose() * obs.X;
    if (diff.rows() > 0 && lambda1 > 0.0) {
        m.noalias() += lambda1 * diff.transpose() * diff;
    }
    Eigen::VectorXd rhs = obs.X.transpose() * obs.Y;

    Eigen::VectorXd theta;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
        theta = ldlt.solve(rhs);
        double res = (m * theta - rhs).lpNorm<Eigen::Infinity>();
        double scale = std::max(rhs.lpNorm<Eigen::Infinity>(), 1.0);
        ok = theta.allFinite() && res <= 1e-8 * scale;
    }
    if (!ok) {
        // Singular system (e.g. lambda1 = 0 with unobserved links): minimum-norm.
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(m);
        theta = cod.solve(rhs);
    }
    if (!theta.allFinite()) {
        throw NumericalError("solve_ridge: non-finite solution");
    }

    HistoricModel model;
    model.lambda1 = lambda1;
    model.theta_raw = theta;
    model.theta = theta;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (model.theta(i) < 0.0) {
            model.theta(i) = 0.0;
            model.clamped_links.push_back(static_cast<int>(i));
        }
    }
    return model;
}

double lasso_lambda_max(const ObservationSet &obs, const Eigen::VectorXd &theta) {
    Eigen::VectorXd r = obs.Y - obs.X * theta;
    return 2.0 * (obs.X.transpose() * r).lpNorm<Eigen::Infinity>();
}

double lasso_kkt_residual(const ObservationSet &obs, const Eigen::VectorXd &theta,
                          const Eigen::VectorXd &delta, double lambda2) {
    Eigen::VectorXd g = 2.0 * obs.X.transpose() * (obs.Y - obs.X * (theta + delta));
    double worst = 0.0;
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
        double v = delta(i) == 0.0 ? std::max(0.0, std::fabs(g(i)) - lambda2)
                                   : std::fabs(g(i) - lambda2 * (delta(i) > 0.0 ? 1.0 : -1.0));
        worst = std::max(worst, v);
    }
    return worst;
}

IncidentEstimate solve_lasso(const ObservationSet &obs, const Eigen::VectorXd &theta,
                             double lambda2) {
    if (theta.size() != obs.X.cols()) {
        throw std::invalid_argument("solve_lasso: theta dimension mismatch");
    }
    constexpr int kMaxSweeps = 10000;
    constexpr double kTol = 1e-9;
    const Eigen::Index n = obs.X.cols();

    Eigen::VectorXd col_sq = obs.X.colwise().squaredNorm();
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd r = obs.Y - obs.X * theta;  // residual net of X*delta (delta = 0)

    IncidentEstimate est;
    est.lambda2 = lambda2;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (col_sq(j) == 0.0) continue;
            double old = delta(j);
            double rho = obs.X.col(j).dot(r) + col_sq(j) * old;
            double thresh = 0.5 * lambda2;
            double next = 0.0;
            if (rho > thresh) {
                next = (rho - thresh) / col_sq(j);
            } else if (rho < -thresh) {
                next = (rho + thresh) / col_sq(j);
            }
            if (next != old) {
                r.noalias() -= obs.X.col(j) * (next - old);
                delta(j) = next;
                max_change = std::max(max_change, std::fabs(next - old));
            }
        }
        if (max_change < kTol) {
            ++sweep;
            break;
        }
    }
    if (!delta.allFinite()) {
        throw NumericalError("solve_lasso: non-finite iterate");
    }
    est.delta = std::move(delta);
    est.sweeps = sweep;
    est.kkt_residual = lasso_kkt_residual(obs, theta, est.delta, lambda2);
    est.converged = sweep < kMaxSweeps;
    return est;
}

double predict_travel_time(const std::map<int, double> &coverage,
                           const Eigen::VectorXd &theta, const Eigen::VectorXd *delta) {
    double total = 0.0;
    for (const auto &[seg, frac] : coverage) {
        if (seg < 0 || seg >= theta.size()) {
            throw std::invalid_argument("predict_travel_time: unknown segment id " +
                                        std::to_string(seg));
        }
        double t = theta(seg);
        if (delta != nullptr) t += (*delta)(seg);
        total += frac * t;
    }
    return total;
}

std::vector<double> median_backproject(const std::vector<PathIntegral> &paths,
                                       const RoadNetwork &net) {
    if (paths.empty()) {
        throw ValidationError("median_backproject: empty path list");
    }
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(net.size()));
    for (const PathIntegral &pi : paths) {
        double covered_len = 0.0;
        for (const auto &[seg, frac] : pi.coverage) {
            covered_len += frac * net.segment(seg).length_m;
        }
        if (covered_len <= 0.0) continue;
        for (const auto &[seg, frac] : pi.coverage) {
            // Length-proportional share, normalized to full-link-equivalent time.
            double sample = pi.travel_time_s() * net.segment(seg).length_m / covered_len;
            samples[static_cast<std::size_t>(seg)].push_back(sample);
        }
    }
    std::vector<double> estimate(samples.size(), std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto &v = samples[i];
        if (v.empty()) continue;
        std::sort(v.begin(), v.end());
        std::size_t mid = v.size() / 2;
        estimate[i] = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    }
    return estimate;
}

double predict_baseline(const std::map<int, double> &coverage,
                        const std::vector<double> &baseline_theta) {
    double total = 0.0;
    for (const auto &[seg, frac] : coverage) {
        if (seg < 0 || static_cast<std::size_t>(seg) >= baseline_theta.size()) {
            throw std::invalid_argument("predict_baseline: unknown segment id " +
                                        std::to_string(seg));
        }
        double t = baseline_theta[static_cast<std::size_t>(seg)];
        if (std::isnan(t)) {
            throw ValidationError("predict_baseline: link " + std::to_string(seg) +
                                  " has no backprojected samples");
        }
        total += frac * t;
    }
    return total;
}

}  // namespace fcdtt
