#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fragile {

struct GrowthFit {
    std::string best;                           // candidate with smallest residual
    std::map<std::string, double> constant;     // fitted c per candidate
    std::map<std::string, double> residual;     // sum of squared errors per candidate
};

// least-squares fit of y ~ c * g(n) for each named candidate curve:
// log, loglog, log2 (= log squared), n, log_over_loglog, log_delta
GrowthFit fit_growth(const std::vector<std::pair<std::size_t, double>>& points,
                     double delta = 16.0);

struct Aggregate {
    double mean = 0, p50 = 0, p99 = 0;
    std::uint64_t max = 0;
};

struct SizeReport {
    std::size_t n = 0;
    std::size_t trials = 0;
    Aggregate f_target;   // meaningful when the algorithm has a target element
    Aggregate f_max_rest;
    Aggregate f_max;
    Aggregate work;
    bool has_target = false;
    std::uint64_t failures = 0; // trials whose result check failed
};

struct ExperimentConfig {
    std::string algorithm = "tournament";
    // tournament | sample-min | tree-min | det-median | det-select |
    // r-median | mergesort-linear | mergesort-exp | heapify
    std::vector<std::size_t> sizes;
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::string distribution = "random"; // random | sorted | reverse | worst-linear
    std::uint32_t delta = 16;            // tree-min
    std::string preset = "loglog";       // r-median: loglog | sublog
    std::string halver = "exact";        // det-median/select: exact | random:R
    std::uint32_t rank = 0;              // det-select (1-based), 0 = median
    bool check = false;                  // verify results against a plain oracle
};

struct TrialReport {
    ExperimentConfig config;
    std::vector<SizeReport> per_size;
    std::map<std::string, GrowthFit> fits; // keyed by statistic name
};

TrialReport run_experiment(const ExperimentConfig& cfg);

// recompute fits from per-size aggregates (used after merging reports)
void refit(TrialReport& report);

std::string to_json(const TrialReport& report);
std::string to_csv(const TrialReport& report);
TrialReport report_from_json(const std::string& text);
TrialReport merge_reports(const std::vector<TrialReport>& parts);

ExperimentConfig config_from_json(const std::string& text);

} // namespace fragile
