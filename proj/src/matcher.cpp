#include "fcdtt/matcher.hpp"

#include <cmath>
#include <stdexcept>

namespace fcdtt {

std::optional<MatchedFix> match_point(const GeoPoint &p, const RoadNetwork &net,
                                      double max_snap_m) {
    MatchedFix best;
    double best_d = std::numeric_limits<double>::infinity();
    for (const RoadSegment &seg : net.segments()) {
        SegmentProjection proj = point_to_segment_distance(p, seg.a, seg.b);
        if (proj.distance_m < best_d) {
            best_d = proj.distance_m;
            best.segment_id = seg.id;
            best.alpha = proj.alpha;
            best.snap_distance_m = proj.distance_m;
        }
    }
    if (best_d > max_snap_m) {
        return std::nullopt;
    }
    best.fix.pos = p;
    best.chain_pos_m = net.chain_position_m(best.segment_id, best.alpha);
    return best;
}

std::vector<MatchedFix> match_trace(const Trace &trace, const RoadNetwork &net,
                                    double max_snap_m) {
    std::vector<MatchedFix> out;
    double running_max = -std::numeric_limits<double>::infinity();
    for (const GpsFix &fix : trace.fixes) {
        auto m = match_point(fix.pos, net, max_snap_m);
        if (!m) continue;
        m->fix = fix;
        double slack = net.segment(m->segment_id).length_m;
        if (m->chain_pos_m < running_max - slack) continue;  // backward outlier
        running_max = std::max(running_max, m->chain_pos_m);
        out.push_back(*m);
    }
    return out;
}

std::vector<PathIntegral> build_path_integrals(const std::vector<MatchedFix> &matched,
                                               const RoadNetwork &net, double max_gap_s) {
    std::vector<PathIntegral> out;
    for (std::size_t i = 0; i + 1 < matched.size(); ++i) {
        const MatchedFix &lo = matched[i];
        const MatchedFix &hi = matched[i + 1];
        double dt = hi.fix.t - lo.fix.t;
        double advance = hi.chain_pos_m - lo.chain_pos_m;
        if (advance <= 0.0 || dt <= 0.0 || dt > max_gap_s) continue;

        PathIntegral pi;
        pi.t_start = lo.fix.t;
        pi.t_end = hi.fix.t;
        int s_lo = net.locate(lo.chain_pos_m);
        int s_hi = net.locate(hi.chain_pos_m);
        for (int s = s_lo; s <= s_hi; ++s) {
            const RoadSegment &seg = net.segment(s);
            double seg_start = net.segment_start_m(s);
            double covered_from = std::max(lo.chain_pos_m, seg_start);
            double covered_to = std::min(hi.chain_pos_m, seg_start + seg.length_m);
            double frac = (covered_to - covered_from) / seg.length_m;
            if (frac > 0.0) {
                pi.coverage[s] = std::min(frac, 1.0);
            }
        }
        if (!pi.coverage.empty()) {
            out.push_back(std::move(pi));
        }
    }
    return out;
}

}  // namespace fcdtt
