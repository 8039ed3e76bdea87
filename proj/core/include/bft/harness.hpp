#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bft/oracle.hpp"
#include "bft/rng.hpp"

namespace bft {

// One experiment: a tester against a target drawn per trial.
//   tester: blr | active_linear | passive_linear | passive_poly | symmetric |
//           tolerant_symmetric | psf | junta | learn_verify
//   target: "member" (fresh uniform member per trial), "far" (one generated
//           far function shared by all trials), or a function descriptor.
struct ExperimentConfig {
    std::string tester = "blr";
    std::string model;                   // classic | active | passive; defaulted per tester
    std::string family;                  // family descriptor; defaulted per tester
    std::string target = "member";
    uint32_t n = 10;
    uint32_t k = 1;                      // amplification / family / asym-set size
    uint32_t d = 1;                      // polynomial degree
    double eps = 0.1;
    double eps_hi = 0.0;                 // tolerant tester only
    uint64_t u = 0;                      // active pool size
    uint64_t q = 0;                      // query budget / sample length
    uint32_t repetitions = 0;            // per-trial tester repetitions
    uint32_t trials = 1000;
    uint64_t seed = 0;
    std::string csv_path;
    std::string json_path;
};

struct TrialResult {
    uint32_t index = 0;
    Outcome outcome = Outcome::Inconclusive;
    uint64_t queries = 0;
    std::string diagnostic;
};

struct SummaryStats {
    uint64_t accepts = 0;
    uint64_t rejects = 0;
    uint64_t inconclusive = 0;
    double accept_rate = 0;  // over conclusive trials only
    double rate_lo = 0, rate_hi = 0;
    double mean_queries = 0;
};

// Filled-in defaults (budgets, repetitions, family) for a config; throws
// ContractError listing every invalid field.
ExperimentConfig validate(const ExperimentConfig& cfg);

struct ExperimentResult {
    ExperimentConfig config;  // after validation / defaulting
    std::vector<TrialResult> trials;
    SummaryStats stats;
};

// Deterministic: trial t draws only from stream (seed, t); results are
// sorted by trial index, so thread count never changes output.
ExperimentResult run_trials(const ExperimentConfig& cfg, unsigned threads = 0);

SummaryStats summarize(std::span<const TrialResult> trials);

struct SweepRow {
    ExperimentConfig config;
    std::optional<SummaryStats> stats;  // empty on per-config error
    std::string error;
};

std::vector<SweepRow> sweep(const std::vector<ExperimentConfig>& grid, unsigned threads = 0);

// trial,outcome,queries,diagnostic rows; header always present.
void write_trials_csv(const std::string& path, std::span<const TrialResult> trials);

// Config echo (every field) + counts + interval, one JSON object.
void write_summary_json(const std::string& path, const ExperimentResult& result);
std::string summary_json(const ExperimentResult& result);

}  // namespace bft
