#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fcdtt/network.hpp"
#include "fcdtt/preprocess.hpp"

namespace fcdtt {

struct MatchedFix {
    GpsFix fix;
    int segment_id = 0;
    double alpha = 0.0;          // segment-local, alpha=1 at the segment's A endpoint
    double snap_distance_m = 0.0;
    double chain_pos_m = 0.0;    // meters from the corridor start
};

// One observation: elapsed time plus covered links with fractional coverage.
// Covered ids form a contiguous range; interior fractions are exactly 1.
struct PathIntegral {
    double t_start = 0.0;
    double t_end = 0.0;
    std::map<int, double> coverage;  // segment_id -> fraction in (0, 1]
    double travel_time_s() const { return t_end - t_start; }
};

inline constexpr double kDefaultMaxSnapM = 50.0;
inline constexpr double kDefaultMaxGapS = 600.0;

// Snap a point to the nearest corridor segment (exhaustive scan; ties go to
// the lowest id). nullopt when the nearest segment is farther than max_snap_m.
std::optional<MatchedFix> match_point(const GeoPoint &p, const RoadNetwork &net,
                                      double max_snap_m);

// Match every fix, then drop outliers whose chain position falls behind the
// running maximum by more than one segment length.
std::vector<MatchedFix> match_trace(const Trace &trace, const RoadNetwork &net,
                                    double max_snap_m);

// Consecutive matched-fix pairs become path integrals. Pairs with no forward
// progress or with a time gap above max_gap_s are discarded.
std::vector<PathIntegral> build_path_integrals(const std::vector<MatchedFix> &matched,
                                               const RoadNetwork &net,
                                               double max_gap_s = kDefaultMaxGapS);

}  // namespace fcdtt
