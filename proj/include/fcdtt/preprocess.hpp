#pragma once

#include <string>
#include <vector>

#include "fcdtt/geo.hpp"

namespace fcdtt {

struct GpsFix {
    double t = 0.0;  // unix seconds
    GeoPoint pos;
    std::string vehicle_id;
};

struct Trace {
    std::string vehicle_id;
    std::vector<GpsFix> fixes;  // strictly increasing in t
};

struct StopDetectorConfig {
    double d_max_m = 50.0;
    int n_max = 2;
};

struct MotionLabels {
    std::vector<bool> valid;  // one flag per fix
};

// Parse the trace CSV (header vehicle_id,timestamp,lat,lon). One Trace per
// vehicle, fixes sorted ascending; duplicate (vehicle, timestamp) rows are
// rejected. Traces are returned in first-appearance order of the vehicle id.
std::vector<Trace> parse_traces(const std::string &path);

// Consecutive-proximity stop detection. A run is a maximal sequence of fixes
// each within d_max_m of its predecessor; once the run length exceeds n_max
// the whole run is labeled invalid.
MotionLabels detect_stops(const Trace &trace, const StopDetectorConfig &cfg);

// Maximal runs of valid fixes become sub-traces; runs shorter than 2 fixes
// are dropped.
std::vector<Trace> split_at_stops(const Trace &trace, const MotionLabels &labels);

}  // namespace fcdtt
