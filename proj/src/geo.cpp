#include "fcdtt/geo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fcdtt {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
}  // namespace

bool is_valid(const GeoPoint &p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
           p.lon >= -180.0 && p.lon <= 180.0;
}

double geodesic_distance(const GeoPoint &p1, const GeoPoint &p2) {
    if (!is_valid(p1) || !is_valid(p2)) {
        throw std::invalid_argument("geodesic_distance: coordinates out of range or non-finite");
    }
    double lat1 = p1.lat * kDegToRad;
    double lat2 = p2.lat * kDegToRad;
    double dlat = (p2.lat - p1.lat) * kDegToRad;
    double dlon = (p2.lon - p1.lon) * kDegToRad;
    double sl = std::sin(0.5 * dlat);
    double so = std::sin(0.5 * dlon);
    double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

GeoPoint interpolate(const GeoPoint &seg_a, const GeoPoint &seg_b, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("interpolate: alpha outside [0,1]");
    }
    return GeoPoint{alpha * seg_a.lat + (1.0 - alpha) * seg_b.lat,
                    alpha * seg_a.lon + (1.0 - alpha) * seg_b.lon};
}

SegmentProjection point_to_segment_distance(const GeoPoint &p, const GeoPoint &seg_a,
                                            const GeoPoint &seg_b) {
    if (geodesic_distance(seg_a, seg_b) <= 0.0) {
        throw std::invalid_argument("point_to_segment_distance: degenerate zero-length segment");
    }
    // Local equirectangular frame centered on the segment midpoint. Exact to
    // well under GPS noise for street-scale segments.
    double lat0 = 0.5 * (seg_a.lat + seg_b.lat) * kDegToRad;
    double coslat = std::cos(lat0);
    auto to_xy = [&](const GeoPoint &q, double &x, double &y) {
        x = kEarthRadiusM * (q.lon - seg_a.lon) * kDegToRad * coslat;
        y = kEarthRadiusM * (q.lat - seg_a.lat) * kDegToRad;
    };
    double ax, ay, bx, by, px, py;
    to_xy(seg_a, ax, ay);
    to_xy(seg_b, bx, by);
    to_xy(p, px, py);
    double abx = bx - ax, aby = by - ay;
    double s = ((px - ax) * abx + (py - ay) * aby) / (abx * abx + aby * aby);

    double da = geodesic_distance(p, seg_a);
    double db = geodesic_distance(p, seg_b);
    SegmentProjection best = da <= db ? SegmentProjection{1.0, da} : SegmentProjection{0.0, db};
    if (s > 0.0 && s < 1.0) {
        // Foot inside the segment: both interior angles acute.
        double alpha = 1.0 - s;
        double d = geodesic_distance(p, interpolate(seg_a, seg_b, alpha));
        if (d < best.distance_m) best = SegmentProjection{alpha, d};
    }
    return best;
}

}  // namespace fcdtt
