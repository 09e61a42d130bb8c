#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "evasion/attack_ap.hpp"
#include "evasion/attack_re.hpp"
#include "evasion/classifiers.hpp"
#include "evasion/metrics.hpp"

namespace evasion {

enum class AttackMethod { AP, RE };

std::string to_string(AttackMethod m);
AttackMethod method_from(std::string_view name);

/// The full experiment matrix: datasets x defenders x methods x runs.
struct ExperimentConfig {
    /// CSV paths or fixture names (separable-2d, two-blob-nonconvex).
    std::vector<std::string> datasets;
    /// Model kinds: linear | knn | dtree | rforest | rbf.
    std::vector<std::string> defenders;
    std::vector<AttackMethod> methods;
    int runs = 30;
    std::uint64_t master_seed = 7;

    APConfig ap;
    REConfig re;

    /// Rows generated for fixture datasets.
    std::size_t fixture_n = 400;
    /// Deterministic subsample cap applied after loading a CSV; 0 keeps all
    /// rows. Meant for corpora too large for desk-scale runs.
    std::size_t max_rows = 0;
    /// Fraction of each dataset the defender trains on; the remainder is the
    /// adversary's pool, held out from training entirely.
    double defender_fraction = 0.7;
    /// Legitimate seed samples handed to the AP attack.
    std::size_t ap_seed_count = 10;
    /// Per-class seed samples handed to the RE attack.
    std::size_t re_seed_per_class = 5;

    DefenderParams defender_params;
    int cv_folds = 5;
    bool oracle_log = false;
};

/// Parses a flat key/value config file (key = value, # comments). Unknown
/// keys are rejected. Values not present keep their defaults.
ExperimentConfig load_config_file(const std::filesystem::path& path);
/// Applies one key/value pair; shared by the file loader and CLI overrides.
void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

struct CellError {
    std::string dataset;
    std::string defender;
    std::string method;
    int run = 0; // -1 marks a failure outside any single run
    std::string message;
};

struct ExperimentResult {
    AttackReport report;
    std::vector<CellError> errors;
};

/// Loads a dataset reference from the config: fixture name or CSV path.
Dataset resolve_dataset(const std::string& ref, const ExperimentConfig& cfg);

/// Runs the whole matrix. Each cell gets a seed derived from (master_seed,
/// dataset, defender, method, run); a failing cell is recorded and the
/// matrix continues. Fully deterministic for a fixed master_seed.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class SweepParameter { RExploit, BExplore };

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::RExploit;
    std::vector<double> values; // strictly increasing
    ExperimentConfig base;
};

/// One full experiment per value, varying only the named parameter (applied
/// to both the AP and RE configs).
std::vector<std::pair<double, ExperimentResult>> run_sweep(const SweepSpec& spec);

// ---- report emission ----------------------------------------------------

/// records.csv schema (doubles as shortest round-trip decimals):
///   dataset,defender,method,run,ear,anchor_yield,surrogate_fidelity,probes_used,seed
std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_csv(const std::string& text);
std::vector<RunRecord> load_records_csv(const std::filesystem::path& path);

/// Writes records.csv, aggregates.csv, accuracy.csv and, when any cell
/// failed, errors.txt. Returns the paths written.
std::vector<std::filesystem::path>
emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir);

/// Writes sweep.csv plus one value_<v>/ report directory per sweep point
/// and, when charts is set, an EAR-vs-parameter SVG line chart.
std::vector<std::filesystem::path>
emit_sweep(SweepParameter parameter,
           const std::vector<std::pair<double, ExperimentResult>>& results,
           const std::filesystem::path& out_dir, bool charts);

/// Rebuilds aggregates.csv (and the sweep chart, when asked and sweep.csv is
/// present) from an existing report directory.
std::vector<std::filesystem::path>
regenerate_report(const std::filesystem::path& dir, bool charts);

/// Human-readable aggregate table, one row per (dataset, defender, method).
std::string format_report_table(const AttackReport& report);

} // namespace evasion
