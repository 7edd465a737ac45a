#pragma once

#include <string>
#include <vector>

#include "fcdtt/eval.hpp"
#include "fcdtt/matcher.hpp"
#include "fcdtt/preprocess.hpp"

namespace fcdtt {

struct PreprocessOptions {
    StopDetectorConfig stop;
    double max_snap_m = kDefaultMaxSnapM;
    double max_gap_s = kDefaultMaxGapS;
    int window_start_hour = 0;
    int window_end_hour = 24;
    std::vector<MatchedFix> *match_dump = nullptr;  // optional debug capture
};

struct PreprocessCounts {
    int raw_fixes = 0;
    int valid_fixes = 0;
    int matched_fixes = 0;
    int integrals = 0;
};

// detect_stops -> split_at_stops -> match_trace -> build_path_integrals,
// then the time-window filter on t_start.
std::vector<PathIntegral> preprocess_trace(const Trace &trace, const RoadNetwork &net,
                                           const PreprocessOptions &opts,
                                           PreprocessCounts *counts = nullptr);

std::vector<PathIntegral> preprocess_traces(const std::vector<Trace> &traces,
                                            const RoadNetwork &net,
                                            const PreprocessOptions &opts,
                                            PreprocessCounts *counts = nullptr);

}  // namespace fcdtt
