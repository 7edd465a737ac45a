#include "fcdtt/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fcdtt/rng.hpp"

namespace fcdtt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kThetaFloorS = 0.1;
constexpr double kCorridorLatDeg = 28.6;  // arbitrary mid-latitude placement

GeoPoint displaced(const GeoPoint &p, double north_m, double east_m) {
    double dlat = north_m / kEarthRadiusM * 180.0 / kPi;
    double dlon = east_m / (kEarthRadiusM * std::cos(p.lat * kPi / 180.0)) * 180.0 / kPi;
    return GeoPoint{p.lat + dlat, p.lon + dlon};
}

// Exact position at travel time s along the corridor given per-link times.
GeoPoint position_at(const RoadNetwork &net, const Eigen::VectorXd &link_times, double s) {
    double acc = 0.0;
    for (int n = 0; n < net.size(); ++n) {
        double tau = link_times(n);
        if (s <= acc + tau || n == net.size() - 1) {
            double f = std::clamp((s - acc) / tau, 0.0, 1.0);
            const RoadSegment &seg = net.segment(n);
            return interpolate(seg.a, seg.b, 1.0 - f);
        }
        acc += tau;
    }
    return net.segments().back().b;
}

}  // namespace

Eigen::VectorXd day_link_times(const GroundTruth &truth, int day) {
    Eigen::VectorXd t = truth.theta_star + truth.delta_star.at(static_cast<std::size_t>(day));
    return t.cwiseMax(kThetaFloorS);
}

std::pair<RoadNetwork, GroundTruth> generate_truth(const SynthConfig &cfg) {
    // Straight east-west corridor at a fixed latitude: shared endpoints are
    // exact, so the chain invariant holds to the bit.
    double dlon =
        cfg.link_length_m / (kEarthRadiusM * std::cos(kCorridorLatDeg * kPi / 180.0)) * 180.0 / kPi;
    std::vector<RoadSegment> segments;
    for (int i = 0; i < cfg.n_links; ++i) {
        RoadSegment s;
        s.id = i;
        s.a = GeoPoint{kCorridorLatDeg, 77.0 + i * dlon};
        s.b = GeoPoint{kCorridorLatDeg, 77.0 + (i + 1) * dlon};
        segments.push_back(s);
    }
    RoadNetwork net = RoadNetwork::from_segments(std::move(segments));

    Rng truth_rng = Rng(cfg.seed).stream("truth");
    GroundTruth truth;
    truth.theta_star.resize(cfg.n_links);
    double tau_gen = 0.1 * cfg.base_link_time_s;
    double level = cfg.base_link_time_s;
    for (int i = 0; i < cfg.n_links; ++i) {
        truth.theta_star(i) = std::max(level, kThetaFloorS);
        level += truth_rng.normal(0.0, tau_gen);
        level = std::max(level, 0.2 * cfg.base_link_time_s);
    }

    Rng incident_rng = Rng(cfg.seed).stream("incidents");
    for (int d = 0; d < cfg.n_days; ++d) {
        Eigen::VectorXd delta = Eigen::VectorXd::Zero(cfg.n_links);
        Rng day_rng = incident_rng.stream(static_cast<std::uint64_t>(d));
        for (int i = 0; i < cfg.n_links; ++i) {
            if (day_rng.uniform() < cfg.incident_prob) {
                delta(i) = day_rng.laplace(cfg.incident_scale_s);
                // Keep effective link times physical.
                delta(i) = std::max(delta(i), kThetaFloorS - truth.theta_star(i));
            }
        }
        truth.delta_star.push_back(std::move(delta));
    }
    return {std::move(net), std::move(truth)};
}

std::vector<Trace> generate_day_traces(const RoadNetwork &net, const GroundTruth &truth,
                                       int day, const SynthConfig &cfg) {
    Rng day_rng = Rng(cfg.seed).stream("traces").stream(static_cast<std::uint64_t>(day));
    Eigen::VectorXd base_times = day_link_times(truth, day);
    double sigma_link = cfg.obs_noise_sigma_s / std::sqrt(static_cast<double>(net.size()));

    std::vector<Trace> traces;
    for (int v = 0; v < cfg.paths_per_day; ++v) {
        Rng rng = day_rng.stream(static_cast<std::uint64_t>(v));
        Trace tr;
        tr.vehicle_id = "d" + std::to_string(day) + "_v" + std::to_string(v);

        // Per-vehicle realized link times; totals have std = obs_noise_sigma_s.
        Eigen::VectorXd link_times = base_times;
        if (cfg.obs_noise_sigma_s > 0.0) {
            for (int n = 0; n < net.size(); ++n) {
                link_times(n) = std::max(link_times(n) + rng.normal(0.0, sigma_link), kThetaFloorS);
            }
        }
        double total_time = link_times.sum();

        long long day_start = static_cast<long long>(day) * 86400 + cfg.window_start_hour * 3600;
        long long t0 = day_start + static_cast<long long>(rng.uniform() * cfg.window_len_s);

        // Sample instants on the travel clock, integer seconds. The GPS
        // cadence is not aligned with the journey start, so the first fix
        // lands at a random phase into the first sampling interval.
        std::vector<long long> offsets;
        long long s = 0;
        if (cfg.sample_jitter_frac > 0.0) {
            s = std::llround(rng.uniform() * cfg.sample_interval_s);
        }
        while (static_cast<double>(s) <= total_time) {
            offsets.push_back(s);
            double step = cfg.sample_interval_s;
            if (cfg.sample_jitter_frac > 0.0) {
                step *= 1.0 + cfg.sample_jitter_frac * rng.uniform(-1.0, 1.0);
            }
            s += std::max<long long>(1, std::llround(step));
        }

        bool inject_stop = rng.uniform() < cfg.stop_injection_prob && offsets.size() >= 3;
        std::size_t stop_after = 0;
        if (inject_stop) {
            stop_after = 1 + static_cast<std::size_t>(rng.uniform_index(offsets.size() - 2));
        }

        for (std::size_t k = 0; k < offsets.size(); ++k) {
            GpsFix fix;
            fix.vehicle_id = tr.vehicle_id;
            fix.t = static_cast<double>(t0 + offsets[k]);
            fix.pos = position_at(net, link_times, static_cast<double>(offsets[k]));
            if (cfg.gps_noise_sigma_m > 0.0) {
                fix.pos = displaced(fix.pos, rng.normal(0.0, cfg.gps_noise_sigma_m),
                                    rng.normal(0.0, cfg.gps_noise_sigma_m));
            }
            tr.fixes.push_back(fix);

            if (inject_stop && k == stop_after && k + 1 < offsets.size() &&
                offsets[k + 1] - offsets[k] > cfg.stop_cluster_fixes + 1) {
                // Spurious stationary cluster between two genuine samples,
                // centered mid-step so it stays far from both neighbors.
                double mid_s = 0.5 * static_cast<double>(offsets[k] + offsets[k + 1]);
                GeoPoint center = position_at(net, link_times, mid_s);
                long long gap = offsets[k + 1] - offsets[k];
                int m = cfg.stop_cluster_fixes;
                for (int j = 1; j <= m; ++j) {
                    GpsFix stop_fix;
                    stop_fix.vehicle_id = tr.vehicle_id;
                    long long dt = std::max<long long>(1, gap * j / (m + 1));
                    stop_fix.t = static_cast<double>(t0 + offsets[k] + dt);
                    double r = cfg.stop_cluster_radius_m;
                    stop_fix.pos =
                        displaced(center, rng.uniform(-r, r) * 0.5, rng.uniform(-r, r) * 0.5);
                    tr.fixes.push_back(stop_fix);
                }
            }
        }
        // Cluster insertion keeps times strictly increasing by construction.
        traces.push_back(std::move(tr));
    }
    return traces;
}

}  // namespace fcdtt
