#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fcdtt/network.hpp"
#include "fcdtt/preprocess.hpp"

namespace fcdtt {

struct SynthConfig {
    int n_links = 30;
    double link_length_m = 100.0;
    int n_days = 22;
    int paths_per_day = 3;          // vehicles per day window
    double sample_interval_s = 150.0;  // probe sampling cadence
    double gps_noise_sigma_m = 10.0;
    double incident_prob = 0.1;        // per link per day
    double incident_scale_s = 25.0;    // Laplace scale of daily deviations
    double obs_noise_sigma_s = 5.0;    // std of an end-to-end path's total time
    double stop_injection_prob = 0.0;  // per trace
    std::uint64_t seed = 1;

    // Generator shape knobs beyond the paper's calibration targets.
    double base_link_time_s = 60.0;     // random-walk base for theta_star
    double sample_jitter_frac = 0.1;    // +-10% cadence jitter; 0 disables
    int stop_cluster_fixes = 4;         // n_max + 2 for the default detector
    double stop_cluster_radius_m = 12.5;  // d_max / 4 for the default detector
    int window_start_hour = 8;
    int window_len_s = 3600;
};

struct GroundTruth {
    Eigen::VectorXd theta_star;               // positive link times, seconds
    std::vector<Eigen::VectorXd> delta_star;  // per-day sparse deviations
};

// Straight corridor plus a positive random-walk theta_star (adjacent
// differences Normal(0, (0.1*base)^2), floored) and per-day sparse Laplace
// deviations. Deterministic per seed.
std::pair<RoadNetwork, GroundTruth> generate_truth(const SynthConfig &cfg);

// End-to-end probe traces for one day. Timestamps are integer seconds and the
// recorded position is the exact trajectory position at that instant (plus
// GPS noise), so total noise-free path times close exactly against the truth.
std::vector<Trace> generate_day_traces(const RoadNetwork &net, const GroundTruth &truth,
                                       int day, const SynthConfig &cfg);

// Effective per-day link times: theta_star + delta_star[day], floored at 0.1 s.
Eigen::VectorXd day_link_times(const GroundTruth &truth, int day);

}  // namespace fcdtt
