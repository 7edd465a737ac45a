#include "fcdtt/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fcdtt/errors.hpp"

namespace fcdtt {

RoadNetwork RoadNetwork::from_segments(std::vector<RoadSegment> segments) {
    if (segments.empty()) {
        throw ValidationError("network: empty segment list");
    }
    RoadNetwork net;
    constexpr double kJoinTolDeg = 1e-9;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        RoadSegment &s = segments[i];
        s.id = static_cast<int>(i);
        s.length_m = geodesic_distance(s.a, s.b);
        if (s.length_m <= 0.0) {
            throw ValidationError("network: zero-length segment at index " + std::to_string(i));
        }
        if (i > 0) {
            const RoadSegment &prev = segments[i - 1];
            if (std::fabs(prev.b.lat - s.a.lat) > kJoinTolDeg ||
                std::fabs(prev.b.lon - s.a.lon) > kJoinTolDeg) {
                throw ValidationError("network: broken chain between segments " +
                                      std::to_string(i - 1) + " and " + std::to_string(i));
            }
        }
    }
    net.cum_start_.reserve(segments.size());
    double acc = 0.0;
    for (const RoadSegment &s : segments) {
        net.cum_start_.push_back(acc);
        acc += s.length_m;
    }
    net.total_length_m_ = acc;
    net.segments_ = std::move(segments);
    return net;
}

int RoadNetwork::locate(double pos_m) const {
    if (pos_m <= 0.0) return 0;
    if (pos_m >= total_length_m_) return size() - 1;
    auto it = std::upper_bound(cum_start_.begin(), cum_start_.end(), pos_m);
    return static_cast<int>(it - cum_start_.begin()) - 1;
}

RoadNetwork parse_network_json(const std::string &text, const std::string &origin) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(origin + ": invalid JSON: " + e.what());
    }
    if (!doc.contains("segments") || !doc["segments"].is_array()) {
        throw ValidationError(origin + ": missing \"segments\" array");
    }
    std::vector<RoadSegment> segments;
    for (const auto &item : doc["segments"]) {
        RoadSegment s;
        try {
            s.id = item.at("id").get<int>();
            s.a = GeoPoint{item.at("a").at(0).get<double>(), item.at("a").at(1).get<double>()};
            s.b = GeoPoint{item.at("b").at(0).get<double>(), item.at("b").at(1).get<double>()};
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError(origin + ": malformed segment entry: " + e.what());
        }
        if (!is_valid(s.a) || !is_valid(s.b)) {
            throw ValidationError(origin + ": segment " + std::to_string(s.id) +
                                  " has out-of-range coordinates");
        }
        segments.push_back(s);
    }
    return RoadNetwork::from_segments(std::move(segments));
}

RoadNetwork load_network(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("network: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_network_json(buf.str(), path);
}

std::string network_to_json(const RoadNetwork &net) {
    nlohmann::json doc;
    doc["segments"] = nlohmann::json::array();
    for (const RoadSegment &s : net.segments()) {
        doc["segments"].push_back(
            {{"id", s.id}, {"a", {s.a.lat, s.a.lon}}, {"b", {s.b.lat, s.b.lon}}});
    }
    return doc.dump(2) + "\n";
}

Eigen::MatrixXd build_difference_matrix(int n_links) {
    if (n_links < 2) {
        return Eigen::MatrixXd(0, std::max(n_links, 0));
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n_links - 1, n_links);
    for (int m = 0; m + 1 < n_links; ++m) {
        d(m, m) = -1.0;
        d(m, m + 1) = 1.0;
    }
    return d;
}

}  // namespace fcdtt
