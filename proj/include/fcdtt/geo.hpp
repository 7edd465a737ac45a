#pragma once

namespace fcdtt {

inline constexpr double kEarthRadiusM = 6371000.0;

struct GeoPoint {
    double lat = 0.0;  // degrees, [-90, 90]
    double lon = 0.0;  // degrees, [-180, 180]
};

bool is_valid(const GeoPoint &p);

// Great-circle (haversine) distance in meters, spherical Earth.
double geodesic_distance(const GeoPoint &p1, const GeoPoint &p2);

// Point on the segment: alpha*A + (1-alpha)*B, so alpha=1 is A and alpha=0 is B.
GeoPoint interpolate(const GeoPoint &seg_a, const GeoPoint &seg_b, double alpha);

struct SegmentProjection {
    double alpha = 0.0;       // [0, 1], same orientation as interpolate()
    double distance_m = 0.0;  // >= 0
};

// Shortest distance from p to the segment (a, b). If the perpendicular foot
// falls inside the segment (computed in a local tangent-plane frame) the
// interior minimum is returned; otherwise the nearer endpoint with alpha
// clamped to 0 or 1.
SegmentProjection point_to_segment_distance(const GeoPoint &p, const GeoPoint &seg_a,
                                            const GeoPoint &seg_b);

}  // namespace fcdtt
