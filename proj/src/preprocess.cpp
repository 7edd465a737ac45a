#include "fcdtt/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fcdtt/errors.hpp"

namespace fcdtt {

namespace {

std::vector<std::string> split_csv_line(const std::string &line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

std::vector<Trace> parse_traces(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("traces: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("traces: empty file " + path);
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "vehicle_id,timestamp,lat,lon") {
        throw ValidationError("traces: bad header in " + path + ": " + line);
    }

    std::vector<std::string> order;
    std::map<std::string, std::vector<GpsFix>> per_vehicle;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw ValidationError("traces: " + path + ":" + std::to_string(line_no) +
                                  ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        GpsFix fix;
        fix.vehicle_id = fields[0];
        try {
            std::size_t pos = 0;
            fix.t = static_cast<double>(std::stoll(fields[1], &pos));
            if (pos != fields[1].size()) throw std::invalid_argument("trailing chars");
            fix.pos.lat = std::stod(fields[2]);
            fix.pos.lon = std::stod(fields[3]);
        } catch (const std::exception &) {
            throw ValidationError("traces: " + path + ":" + std::to_string(line_no) +
                                  ": malformed row");
        }
        if (fix.t <= 0.0 || !std::isfinite(fix.t)) {
            throw ValidationError("traces: " + path + ":" + std::to_string(line_no) +
                                  ": non-positive timestamp");
        }
        if (!is_valid(fix.pos)) {
            throw ValidationError("traces: " + path + ":" + std::to_string(line_no) +
                                  ": lat/lon out of range");
        }
        if (per_vehicle.find(fix.vehicle_id) == per_vehicle.end()) {
            order.push_back(fix.vehicle_id);
        }
        per_vehicle[fix.vehicle_id].push_back(fix);
    }

    std::vector<Trace> traces;
    traces.reserve(order.size());
    for (const std::string &vid : order) {
        Trace tr;
        tr.vehicle_id = vid;
        tr.fixes = std::move(per_vehicle[vid]);
        std::stable_sort(tr.fixes.begin(), tr.fixes.end(),
                         [](const GpsFix &a, const GpsFix &b) { return a.t < b.t; });
        for (std::size_t i = 1; i < tr.fixes.size(); ++i) {
            if (tr.fixes[i].t == tr.fixes[i - 1].t) {
                throw ValidationError("traces: duplicate timestamp " +
                                      std::to_string(static_cast<long long>(tr.fixes[i].t)) +
                                      " for vehicle " + vid);
            }
        }
        traces.push_back(std::move(tr));
    }
    return traces;
}

MotionLabels detect_stops(const Trace &trace, const StopDetectorConfig &cfg) {
    const std::size_t n = trace.fixes.size();
    MotionLabels labels;
    labels.valid.assign(n, true);
    if (n == 0) return labels;

    std::size_t run_start = 0;
    auto close_run = [&](std::size_t run_end) {
        // run is [run_start, run_end); invalidate the whole run if the tally
        // exceeded n_max (strict comparison).
        if (run_end - run_start > static_cast<std::size_t>(cfg.n_max)) {
            for (std::size_t j = run_start; j < run_end; ++j) labels.valid[j] = false;
        }
    };
    for (std::size_t i = 1; i < n; ++i) {
        double d = geodesic_distance(trace.fixes[i - 1].pos, trace.fixes[i].pos);
        if (d > cfg.d_max_m) {
            close_run(i);
            run_start = i;
        }
    }
    close_run(n);
    return labels;
}

std::vector<Trace> split_at_stops(const Trace &trace, const MotionLabels &labels) {
    if (labels.valid.size() != trace.fixes.size()) {
        throw std::invalid_argument("split_at_stops: label/fix length mismatch");
    }
    std::vector<Trace> out;
    Trace current;
    current.vehicle_id = trace.vehicle_id;
    auto flush = [&]() {
        if (current.fixes.size() >= 2) {
            out.push_back(current);
        }
        current.fixes.clear();
    };
    for (std::size_t i = 0; i < trace.fixes.size(); ++i) {
        if (labels.valid[i]) {
            current.fixes.push_back(trace.fixes[i]);
        } else {
            flush();
        }
    }
    flush();
    return out;
}

}  // namespace fcdtt
