#include "fcdtt/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "fcdtt/errors.hpp"

namespace fcdtt {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("io: cannot write " + path);
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("io: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json curve_to_json(const CvCurve &c) {
    return json{{"lambdas", c.lambdas}, {"errors", c.errors}, {"best_lambda", c.best_lambda}};
}

CvCurve curve_from_json(const json &j) {
    CvCurve c;
    c.lambdas = j.at("lambdas").get<std::vector<double>>();
    c.errors = j.at("errors").get<std::vector<double>>();
    c.best_lambda = j.at("best_lambda").get<double>();
    return c;
}

}  // namespace

void write_traces_csv(const std::string &path, const std::vector<Trace> &traces) {
    std::ofstream out = open_out(path);
    out << "vehicle_id,timestamp,lat,lon\n";
    char buf[128];
    for (const Trace &tr : traces) {
        for (const GpsFix &fix : tr.fixes) {
            std::snprintf(buf, sizeof(buf), ",%lld,%.10f,%.10f\n",
                          static_cast<long long>(fix.t), fix.pos.lat, fix.pos.lon);
            out << fix.vehicle_id << buf;
        }
    }
}

void write_day_blocks(const std::string &path, const std::vector<DayBlock> &blocks) {
    std::ofstream out = open_out(path);
    for (const DayBlock &block : blocks) {
        for (const PathIntegral &pi : block.paths) {
            json cov = json::object();
            for (const auto &[seg, frac] : pi.coverage) {
                cov[std::to_string(seg)] = frac;
            }
            json line = {{"day", block.day_id},
                         {"t_start", pi.t_start},
                         {"t_end", pi.t_end},
                         {"coverage", cov}};
            out << line.dump() << "\n";
        }
    }
}

std::vector<DayBlock> read_day_blocks(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("io: cannot open " + path);
    }
    std::vector<DayBlock> blocks;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error &e) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        PathIntegral pi;
        std::string day = j.at("day").get<std::string>();
        pi.t_start = j.at("t_start").get<double>();
        pi.t_end = j.at("t_end").get<double>();
        for (const auto &[key, value] : j.at("coverage").items()) {
            pi.coverage[std::stoi(key)] = value.get<double>();
        }
        auto it = std::find_if(blocks.begin(), blocks.end(),
                               [&](const DayBlock &b) { return b.day_id == day; });
        if (it == blocks.end()) {
            blocks.push_back(DayBlock{day, {}});
            it = blocks.end() - 1;
        }
        it->paths.push_back(std::move(pi));
    }
    return blocks;
}

void write_match_dump(const std::string &path, const std::vector<MatchedFix> &matched) {
    std::ofstream out = open_out(path);
    for (const MatchedFix &m : matched) {
        json line = {
            {"t", m.fix.t}, {"seg", m.segment_id}, {"alpha", m.alpha}, {"snap_m", m.snap_distance_m}};
        out << line.dump() << "\n";
    }
}

void write_model(const std::string &path, const ModelFile &mf) {
    json doc;
    doc["theta"] = std::vector<double>(mf.model.theta.begin(), mf.model.theta.end());
    doc["lambda1"] = mf.model.lambda1;
    doc["lambda2"] = mf.lambda2;
    doc["n_links"] = mf.n_links;
    doc["clamped_links"] = mf.model.clamped_links;
    doc["cv_lambda1"] = curve_to_json(mf.cv_lambda1);
    doc["cv_lambda2"] = curve_to_json(mf.cv_lambda2);
    json baseline = json::array();
    for (double v : mf.baseline_theta) {
        if (std::isnan(v)) {
            baseline.push_back(nullptr);
        } else {
            baseline.push_back(v);
        }
    }
    doc["baseline_theta"] = baseline;
    open_out(path) << doc.dump(2) << "\n";
}

ModelFile read_model(const std::string &path) {
    json doc = json::parse(read_file(path));
    ModelFile mf;
    auto theta = doc.at("theta").get<std::vector<double>>();
    mf.model.theta = Eigen::Map<Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    mf.model.theta_raw = mf.model.theta;
    mf.model.lambda1 = doc.at("lambda1").get<double>();
    mf.model.clamped_links = doc.at("clamped_links").get<std::vector<int>>();
    mf.lambda2 = doc.at("lambda2").get<double>();
    mf.n_links = doc.at("n_links").get<int>();
    mf.cv_lambda1 = curve_from_json(doc.at("cv_lambda1"));
    mf.cv_lambda2 = curve_from_json(doc.at("cv_lambda2"));
    for (const auto &v : doc.at("baseline_theta")) {
        mf.baseline_theta.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                : v.get<double>());
    }
    return mf;
}

void write_split_manifest(const std::string &path, const SplitManifest &m) {
    json doc = {
        {"seed", m.seed}, {"train1", m.train1}, {"train2", m.train2}, {"test", m.test}};
    open_out(path) << doc.dump(2) << "\n";
}

SplitManifest read_split_manifest(const std::string &path) {
    json doc = json::parse(read_file(path));
    SplitManifest m;
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.train1 = doc.at("train1").get<std::vector<std::string>>();
    m.train2 = doc.at("train2").get<std::vector<std::string>>();
    m.test = doc.at("test").get<std::vector<std::string>>();
    return m;
}

void write_report(const std::string &path, const EvaluationReport &report) {
    json algos = json::object();
    for (const auto &[name, stats] : report.algorithms) {
        algos[name] = {{"error_rate", stats.error_rate},
                       {"std", stats.std_dev},
                       {"n", stats.n},
                       {"ci95", {stats.ci95[0], stats.ci95[1]}}};
    }
    json doc = {{"algorithms", algos},
                {"lambda1", report.lambda1},
                {"lambda2", report.lambda2},
                {"seed", report.seed}};
    open_out(path) << doc.dump(2) << "\n";
}

void write_predictions_csv(const std::string &path,
                           const std::vector<PredictionRecord> &records) {
    std::ofstream out = open_out(path);
    out << "day,algorithm,predicted_s,true_s,error\n";
    char buf[160];
    for (const PredictionRecord &r : records) {
        std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%.6f\n", r.predicted, r.true_tt, r.error);
        out << r.day_id << "," << r.algorithm << buf;
    }
}

void write_truth(const std::string &path, const GroundTruth &truth) {
    json doc;
    doc["theta_star"] = std::vector<double>(truth.theta_star.begin(), truth.theta_star.end());
    json days = json::array();
    for (const auto &delta : truth.delta_star) {
        days.push_back(std::vector<double>(delta.begin(), delta.end()));
    }
    doc["delta_star"] = days;
    open_out(path) << doc.dump(2) << "\n";
}

GroundTruth read_truth(const std::string &path) {
    json doc = json::parse(read_file(path));
    GroundTruth truth;
    auto theta = doc.at("theta_star").get<std::vector<double>>();
    truth.theta_star =
        Eigen::Map<Eigen::VectorXd>(theta.data(), static_cast<Eigen::Index>(theta.size()));
    for (const auto &day : doc.at("delta_star")) {
        auto d = day.get<std::vector<double>>();
        truth.delta_star.push_back(
            Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
    }
    return truth;
}

void write_text_file(const std::string &path, const std::string &content) {
    open_out(path) << content;
}

}  // namespace fcdtt
