#pragma once

#include <string>
#include <vector>

#include "fcdtt/eval.hpp"
#include "fcdtt/matcher.hpp"
#include "fcdtt/preprocess.hpp"
#include "fcdtt/synth.hpp"

namespace fcdtt {

// Trace CSV (header vehicle_id,timestamp,lat,lon), integer timestamps,
// coordinates at 10 decimal places.
void write_traces_csv(const std::string &path, const std::vector<Trace> &traces);

// Path-integral JSONL: one {"day", "t_start", "t_end", "coverage"} per line.
void write_day_blocks(const std::string &path, const std::vector<DayBlock> &blocks);
std::vector<DayBlock> read_day_blocks(const std::string &path);

// Matched-fix debug JSONL: {"t", "seg", "alpha", "snap_m"}.
void write_match_dump(const std::string &path, const std::vector<MatchedFix> &matched);

struct ModelFile {
    HistoricModel model;
    double lambda2 = 0.0;
    int n_links = 0;
    CvCurve cv_lambda1;
    CvCurve cv_lambda2;
    std::vector<double> baseline_theta;  // NaN entries are unobserved links
};

void write_model(const std::string &path, const ModelFile &mf);
ModelFile read_model(const std::string &path);

struct SplitManifest {
    std::uint64_t seed = 0;
    std::vector<std::string> train1;
    std::vector<std::string> train2;
    std::vector<std::string> test;
};

void write_split_manifest(const std::string &path, const SplitManifest &m);
SplitManifest read_split_manifest(const std::string &path);

void write_report(const std::string &path, const EvaluationReport &report);
void write_predictions_csv(const std::string &path, const std::vector<PredictionRecord> &records);

void write_truth(const std::string &path, const GroundTruth &truth);
GroundTruth read_truth(const std::string &path);

void write_text_file(const std::string &path, const std::string &content);

}  // namespace fcdtt
