#include "fcdtt/pipeline.hpp"

#include <cmath>

namespace fcdtt {

namespace {

bool in_window(double t_start, int start_hour, int end_hour) {
    double sec_of_day = std::fmod(t_start, 86400.0);
    if (sec_of_day < 0.0) sec_of_day += 86400.0;
    int hour = static_cast<int>(sec_of_day / 3600.0);
    return hour >= start_hour && hour < end_hour;
}

}  // namespace

std::vector<PathIntegral> preprocess_trace(const Trace &trace, const RoadNetwork &net,
                                           const PreprocessOptions &opts,
                                           PreprocessCounts *counts) {
    if (counts != nullptr) counts->raw_fixes += static_cast<int>(trace.fixes.size());
    MotionLabels labels = detect_stops(trace, opts.stop);
    std::vector<PathIntegral> out;
    for (const Trace &sub : split_at_stops(trace, labels)) {
        if (counts != nullptr) counts->valid_fixes += static_cast<int>(sub.fixes.size());
        std::vector<MatchedFix> matched = match_trace(sub, net, opts.max_snap_m);
        if (counts != nullptr) counts->matched_fixes += static_cast<int>(matched.size());
        if (opts.match_dump != nullptr) {
            opts.match_dump->insert(opts.match_dump->end(), matched.begin(), matched.end());
        }
        for (PathIntegral &pi : build_path_integrals(matched, net, opts.max_gap_s)) {
            if (in_window(pi.t_start, opts.window_start_hour, opts.window_end_hour)) {
                out.push_back(std::move(pi));
            }
        }
    }
    if (counts != nullptr) counts->integrals += static_cast<int>(out.size());
    return out;
}

std::vector<PathIntegral> preprocess_traces(const std::vector<Trace> &traces,
                                            const RoadNetwork &net,
                                            const PreprocessOptions &opts,
                                            PreprocessCounts *counts) {
    std::vector<PathIntegral> all;
    for (const Trace &tr : traces) {
        auto pis = preprocess_trace(tr, net, opts, counts);
        all.insert(all.end(), pis.begin(), pis.end());
    }
    return all;
}

}  // namespace fcdtt
