#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evasion/attack_ap.hpp"
#include "evasion/classifiers.hpp"

namespace evasion {

/// One attack run's outcome row.
struct RunRecord {
    std::string dataset;
    std::string defender;
    std::string method; // "ap" | "re"
    int run_index = 0;
    double ear = 0.0;
    double anchor_yield = 0.0;
    std::optional<double> surrogate_fidelity;
    std::size_t probes_used = 0;
    std::uint64_t rng_seed = 0;
};

/// Per (dataset, defender, method) aggregate in first-appearance order.
struct AggregateRow {
    std::string dataset;
    std::string defender;
    std::string method;
    std::size_t runs = 0;
    double ear_mean = 0.0;
    double ear_std = 0.0; // sample std, n-1 denominator; 0 for a single run
    double anchor_yield_mean = 0.0;
    std::optional<double> fidelity_mean;
};

struct InitialAccuracy {
    std::string dataset;
    std::string defender;
    double accuracy = 0.0;
};

/// Records plus the per-(dataset, defender) cross-validation accuracy of the
/// defenders they ran against. Aggregates are recomputed on demand so they
/// can never drift from the records.
struct AttackReport {
    std::vector<RunRecord> records;
    std::vector<InitialAccuracy> initial_accuracy;

    std::vector<AggregateRow> aggregates() const;
};

/// Effective attack rate: the fraction of attack samples the defender labels
/// Legitimate, i.e. its false-negative rate on the attack set. Scored with
/// direct model access; no budget ledger is touched.
double ear(const TrainedClassifier& defender, const AttackSet& attacks);

std::vector<AggregateRow> aggregate_rows(const std::vector<RunRecord>& records);

/// Wraps records into a report (aggregates come from the records on demand).
AttackReport aggregate(std::vector<RunRecord> records);

} // namespace evasion
