#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fcdtt/errors.hpp"
#include "fcdtt/network.hpp"
#include "fcdtt/synth.hpp"

using namespace fcdtt;

namespace {

std::string write_temp(const std::string &name, const std::string &content) {
    auto path = (std::filesystem::temp_directory_path() / name).string();
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_network minimal valid chain") {
    auto path = write_temp("net_ok.json", R"({"segments": [
        {"id": 0, "a": [28.6, 77.000], "b": [28.6, 77.001]},
        {"id": 1, "a": [28.6, 77.001], "b": [28.6, 77.002]}]})");
    RoadNetwork net = load_network(path);
    CHECK(net.size() == 2);
    CHECK(net.segment(0).length_m > 0.0);
    CHECK(net.segment(1).id == 1);
    // length derived from coordinates
    CHECK(net.segment(0).length_m ==
          doctest::Approx(geodesic_distance(net.segment(0).a, net.segment(0).b)));
}

TEST_CASE("load_network rejects a broken chain, naming the index") {
    auto path = write_temp("net_gap.json", R"({"segments": [
        {"id": 0, "a": [28.6, 77.000], "b": [28.6, 77.001]},
        {"id": 1, "a": [28.6, 77.011], "b": [28.6, 77.012]}]})");
    CHECK_THROWS_WITH_AS(load_network(path), doctest::Contains("segments 0"), ValidationError);
}

TEST_CASE("load_network rejects an empty segment list") {
    auto path = write_temp("net_empty.json", R"({"segments": []})");
    CHECK_THROWS_AS(load_network(path), ValidationError);
}

TEST_CASE("synthetic 50-link corridor has the paper's 5 km scale") {
    SynthConfig cfg;
    cfg.n_links = 50;
    cfg.link_length_m = 100.0;
    auto [net, truth] = generate_truth(cfg);
    CHECK(net.size() == 50);
    CHECK(std::fabs(net.total_length_m() - 5000.0) < 1.0);
}

TEST_CASE("difference matrix structure") {
    Eigen::MatrixXd d2 = build_difference_matrix(2);
    REQUIRE(d2.rows() == 1);
    CHECK(d2(0, 0) == -1.0);
    CHECK(d2(0, 1) == 1.0);

    Eigen::MatrixXd d3 = build_difference_matrix(3);
    Eigen::Vector3d theta(1.0, 4.0, 9.0);
    Eigen::VectorXd diff = d3 * theta;
    CHECK(diff(0) == doctest::Approx(3.0));
    CHECK(diff(1) == doctest::Approx(5.0));

    // Constant vector is in the null space.
    Eigen::VectorXd c = Eigen::VectorXd::Constant(3, 7.5);
    CHECK((d3 * c).norm() == doctest::Approx(0.0));

    CHECK(build_difference_matrix(1).rows() == 0);
}

TEST_CASE("difference matrix rank and row sums") {
    for (int n : {2, 5, 17}) {
        Eigen::MatrixXd d = build_difference_matrix(n);
        REQUIRE(d.rows() == n - 1);
        for (int m = 0; m < n - 1; ++m) {
            CHECK(d.row(m).sum() == doctest::Approx(0.0));
            int nonzeros = 0;
            for (int c = 0; c < n; ++c) {
                if (d(m, c) != 0.0) ++nonzeros;
            }
            CHECK(nonzeros == 2);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
        CHECK(lu.rank() == n - 1);
    }
}

TEST_CASE("||D theta||^2 equals the sum of squared adjacent differences") {
    Eigen::MatrixXd d = build_difference_matrix(6);
    Eigen::VectorXd theta(6);
    theta << 3.0, 1.0, 4.0, 1.0, 5.0, 9.0;
    double expected = 0.0;
    for (int m = 0; m + 1 < 6; ++m) {
        double step = theta(m + 1) - theta(m);
        expected += step * step;
    }
    CHECK((d * theta).squaredNorm() == doctest::Approx(expected));
}

TEST_CASE("chain position and locate are consistent") {
    SynthConfig cfg;
    cfg.n_links = 10;
    auto [net, truth] = generate_truth(cfg);
    for (int s = 0; s < net.size(); ++s) {
        double mid = net.chain_position_m(s, 0.5);
        CHECK(net.locate(mid) == s);
        CHECK(mid == doctest::Approx(net.segment_start_m(s) + 0.5 * net.segment(s).length_m));
    }
    CHECK(net.locate(-5.0) == 0);
    CHECK(net.locate(net.total_length_m() + 5.0) == net.size() - 1);
}
