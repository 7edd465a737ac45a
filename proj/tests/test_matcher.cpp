#include <doctest.h>

#include <cmath>

#include "fcdtt/matcher.hpp"
#include "fcdtt/rng.hpp"
#include "fcdtt/synth.hpp"

using namespace fcdtt;

namespace {

// 10 x 100 m straight corridor.
RoadNetwork corridor(int n_links = 10, double link_len = 100.0) {
    SynthConfig cfg;
    cfg.n_links = n_links;
    cfg.link_length_m = link_len;
    return generate_truth(cfg).first;
}

GeoPoint offset_north(const GeoPoint &p, double meters) {
    return GeoPoint{p.lat + meters / kEarthRadiusM * 180.0 / M_PI, p.lon};
}

}  // namespace

TEST_CASE("match_point snaps to the midpoint of the containing segment") {
    RoadNetwork net = corridor();
    GeoPoint mid = interpolate(net.segment(3).a, net.segment(3).b, 0.5);
    auto m = match_point(mid, net, 50.0);
    REQUIRE(m.has_value());
    CHECK(m->segment_id == 3);
    CHECK(m->alpha == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(m->snap_distance_m == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("match_point breaks exact ties toward the lower id") {
    RoadNetwork net = corridor();
    // Shared node of segments 2 and 3: equidistant (both zero).
    GeoPoint node = net.segment(3).a;
    auto m = match_point(node, net, 50.0);
    REQUIRE(m.has_value());
    CHECK(m->segment_id == 2);
}

TEST_CASE("match_point rejects far-off points") {
    RoadNetwork net = corridor();
    GeoPoint far = offset_north(net.segment(5).a, 500.0);
    CHECK_FALSE(match_point(far, net, 100.0).has_value());
}

TEST_CASE("match_trace keeps ordered on-corridor fixes with nondecreasing positions") {
    RoadNetwork net = corridor();
    Trace tr;
    tr.vehicle_id = "v";
    for (int i = 0; i < 20; ++i) {
        double pos = i * net.total_length_m() / 19.0;
        int seg = net.locate(pos);
        double within = (pos - net.segment_start_m(seg)) / net.segment(seg).length_m;
        GeoPoint p = interpolate(net.segment(seg).a, net.segment(seg).b,
                                 1.0 - std::clamp(within, 0.0, 1.0));
        tr.fixes.push_back(GpsFix{100.0 + i * 30.0, p, "v"});
    }
    auto matched = match_trace(tr, net, 50.0);
    REQUIRE(matched.size() == 20);
    for (std::size_t i = 1; i < matched.size(); ++i) {
        CHECK(matched[i].chain_pos_m >= matched[i - 1].chain_pos_m);
    }
}

TEST_CASE("match_trace drops a backward GPS glitch") {
    RoadNetwork net = corridor();
    Trace tr;
    tr.vehicle_id = "v";
    auto at_seg_mid = [&](int seg) {
        return interpolate(net.segment(seg).a, net.segment(seg).b, 0.5);
    };
    tr.fixes.push_back(GpsFix{100.0, at_seg_mid(4), "v"});
    tr.fixes.push_back(GpsFix{130.0, at_seg_mid(5), "v"});
    tr.fixes.push_back(GpsFix{160.0, at_seg_mid(2), "v"});  // 3 segments backward
    tr.fixes.push_back(GpsFix{190.0, at_seg_mid(6), "v"});
    auto matched = match_trace(tr, net, 50.0);
    REQUIRE(matched.size() == 3);
    CHECK(matched[0].segment_id == 4);
    CHECK(matched[1].segment_id == 5);
    CHECK(matched[2].segment_id == 6);
}

TEST_CASE("match_trace empties out on a parallel side street") {
    RoadNetwork net = corridor();
    Trace tr;
    tr.vehicle_id = "v";
    for (int i = 0; i < 6; ++i) {
        GeoPoint on = interpolate(net.segment(i).a, net.segment(i).b, 0.5);
        tr.fixes.push_back(GpsFix{100.0 + i * 30.0, offset_north(on, 200.0), "v"});
    }
    CHECK(match_trace(tr, net, 50.0).empty());
}

TEST_CASE("build_path_integrals full-link coverage") {
    RoadNetwork net = corridor(4);
    std::vector<MatchedFix> matched;
    matched.push_back({GpsFix{100.0, {}, "v"}, 1, 1.0, 0.0, net.chain_position_m(1, 1.0)});
    matched.push_back({GpsFix{200.0, {}, "v"}, 2, 0.0, 0.0, net.chain_position_m(2, 0.0)});
    auto pis = build_path_integrals(matched, net);
    REQUIRE(pis.size() == 1);
    REQUIRE(pis[0].coverage.size() == 2);
    CHECK(pis[0].coverage.at(1) == doctest::Approx(1.0));
    CHECK(pis[0].coverage.at(2) == doctest::Approx(1.0));
    CHECK(pis[0].travel_time_s() == doctest::Approx(100.0));
}

TEST_CASE("build_path_integrals fractional single-segment coverage") {
    RoadNetwork net = corridor(4);
    std::vector<MatchedFix> matched;
    matched.push_back({GpsFix{100.0, {}, "v"}, 2, 0.75, 0.0, net.chain_position_m(2, 0.75)});
    matched.push_back({GpsFix{150.0, {}, "v"}, 2, 0.25, 0.0, net.chain_position_m(2, 0.25)});
    auto pis = build_path_integrals(matched, net);
    REQUIRE(pis.size() == 1);
    REQUIRE(pis[0].coverage.size() == 1);
    CHECK(pis[0].coverage.at(2) == doctest::Approx(0.5));
}

TEST_CASE("build_path_integrals discards long gaps and zero progress") {
    RoadNetwork net = corridor(4);
    std::vector<MatchedFix> matched;
    matched.push_back({GpsFix{100.0, {}, "v"}, 0, 0.5, 0.0, net.chain_position_m(0, 0.5)});
    matched.push_back({GpsFix{820.0, {}, "v"}, 2, 0.5, 0.0, net.chain_position_m(2, 0.5)});  // 720 s
    CHECK(build_path_integrals(matched, net, 600.0).empty());

    std::vector<MatchedFix> stuck;
    stuck.push_back({GpsFix{100.0, {}, "v"}, 1, 0.5, 0.0, net.chain_position_m(1, 0.5)});
    stuck.push_back({GpsFix{160.0, {}, "v"}, 1, 0.5, 0.0, net.chain_position_m(1, 0.5)});
    CHECK(build_path_integrals(stuck, net).empty());
}

TEST_CASE("path integral invariants hold on random matched pairs") {
    RoadNetwork net = corridor(12);
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        double p1 = rng.uniform(0.0, net.total_length_m());
        double p2 = rng.uniform(0.0, net.total_length_m());
        if (p1 > p2) std::swap(p1, p2);
        if (p2 - p1 < 1e-6) continue;
        auto mk = [&](double pos, double t) {
            int seg = net.locate(pos);
            double within = (pos - net.segment_start_m(seg)) / net.segment(seg).length_m;
            return MatchedFix{GpsFix{t, {}, "v"}, seg, 1.0 - within, 0.0, pos};
        };
        std::vector<MatchedFix> matched{mk(p1, 100.0), mk(p2, 200.0)};
        auto pis = build_path_integrals(matched, net);
        REQUIRE(pis.size() == 1);
        const PathIntegral &pi = pis[0];

        // Contiguous id range; interior fractions exactly 1.
        REQUIRE(!pi.coverage.empty());
        int first = pi.coverage.begin()->first;
        int last = pi.coverage.rbegin()->first;
        CHECK(static_cast<int>(pi.coverage.size()) == last - first + 1);
        double total_len = 0.0;
        for (const auto &[seg, frac] : pi.coverage) {
            CHECK(frac > 0.0);
            CHECK(frac <= 1.0);
            if (seg != first && seg != last) CHECK(frac == doctest::Approx(1.0));
            total_len += frac * net.segment(seg).length_m;
        }
        // Covered length equals the chain distance between the two fixes.
        CHECK(total_len == doctest::Approx(p2 - p1).epsilon(1e-6));
    }
}

// Independent nearest-segment matching misclassifies a fix when the
// along-track noise component crosses a link boundary; for sigma = 10 m on
// 100 m links that happens with probability 2*sigma/L * 0.3989 ~ 8%, so the
// expected accuracy is ~92%. The acceptance suite measures the same quantity
// on full generated traces.
TEST_CASE("fixes with 10 m GPS noise match the true 100 m segment at ~92%") {
    SynthConfig cfg;
    cfg.n_links = 50;
    cfg.link_length_m = 100.0;
    cfg.gps_noise_sigma_m = 10.0;
    RoadNetwork net = generate_truth(cfg).first;
    Rng rng(202);
    int hits = 0, total = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        double pos = rng.uniform(0.0, net.total_length_m());
        int true_seg = net.locate(pos);
        double within = (pos - net.segment_start_m(true_seg)) / net.segment(true_seg).length_m;
        GeoPoint p = interpolate(net.segment(true_seg).a, net.segment(true_seg).b, 1.0 - within);
        GeoPoint noisy{p.lat + rng.normal(0.0, 10.0) / kEarthRadiusM * 180.0 / M_PI,
                       p.lon + rng.normal(0.0, 10.0) /
                                   (kEarthRadiusM * std::cos(p.lat * M_PI / 180.0)) * 180.0 / M_PI};
        auto m = match_point(noisy, net, 50.0);
        if (!m) continue;
        ++total;
        if (m->segment_id == true_seg) ++hits;
    }
    CHECK(total > 1900);
    double accuracy = static_cast<double>(hits) / total;
    CHECK(accuracy >= 0.90);
    CHECK(accuracy <= 0.95);  // boundary-crossing rate bounds it away from 1
}
