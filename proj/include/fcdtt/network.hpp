#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fcdtt/geo.hpp"

namespace fcdtt {

struct RoadSegment {
    int id = 0;  // 0-based, equals position in the chain
    GeoPoint a;
    GeoPoint b;
    double length_m = 0.0;  // derived from coordinates
};

// An ordered corridor: segments[i].b coincides with segments[i+1].a.
class RoadNetwork {
  public:
    static RoadNetwork from_segments(std::vector<RoadSegment> segments);

    int size() const { return static_cast<int>(segments_.size()); }
    const RoadSegment &segment(int id) const { return segments_.at(static_cast<std::size_t>(id)); }
    const std::vector<RoadSegment> &segments() const { return segments_; }
    double total_length_m() const { return total_length_m_; }

    // Distance from the corridor start to the start of segment `id`.
    double segment_start_m(int id) const { return cum_start_.at(static_cast<std::size_t>(id)); }

    // Chain position in meters of the point at `alpha` on segment `id`
    // (alpha=1 is the segment's A endpoint, i.e. its chain start).
    double chain_position_m(int id, double alpha) const {
        const RoadSegment &s = segment(id);
        return segment_start_m(id) + (1.0 - alpha) * s.length_m;
    }

    // Segment index containing chain position `pos_m` (clamped to the corridor).
    int locate(double pos_m) const;

  private:
    std::vector<RoadSegment> segments_;
    std::vector<double> cum_start_;
    double total_length_m_ = 0.0;
};

// Parse the network JSON file: {"segments": [{"id": i, "a": [lat,lon], "b": [lat,lon]}, ...]}.
// Lengths are always recomputed from the coordinates.
RoadNetwork load_network(const std::string &path);
RoadNetwork parse_network_json(const std::string &text, const std::string &origin);

std::string network_to_json(const RoadNetwork &net);

// First-difference operator D: (N-1) x N, row m has -1 at m and +1 at m+1.
// D*theta is the vector of adjacent link-time differences. N < 2 gives 0 rows.
Eigen::MatrixXd build_difference_matrix(int n_links);

}  // namespace fcdtt
