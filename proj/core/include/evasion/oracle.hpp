#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"

namespace evasion {

struct ProbeRecord {
    Sample x;
    Label label;
    std::size_t index; // 0-based position in the probe sequence
};

/// Probe accounting: total consumption against the budget plus per-phase
/// counters for observability.
struct ProbeLedger {
    std::size_t used = 0;
    std::size_t budget = 0;
    std::map<std::string, std::size_t> per_phase;
};

/// The adversary-facing view of a trained classifier: binary feedback only,
/// each successful probe debits the budget by exactly one. The wrapped model
/// is never exposed and the feedback carries no noise.
///
/// A single oracle instance belongs to one attack run; concurrent runs each
/// construct their own.
class BlackBoxOracle {
public:
    BlackBoxOracle(ClassifierPtr model, std::size_t dimension, std::size_t budget,
                   bool keep_log = false);

    /// Returns the hidden model's label for x. Throws BudgetExhausted when
    /// the budget is spent and ContractError on a dimension mismatch; a
    /// throwing probe consumes nothing.
    Label probe(const Sample& x);

    std::size_t used() const { return ledger_.used; }
    std::size_t budget() const { return ledger_.budget; }
    std::size_t remaining() const { return ledger_.budget - ledger_.used; }
    std::size_t dimension() const { return dimension_; }
    const ProbeLedger& ledger() const { return ledger_; }

    /// Raising the budget makes a previously exhausted oracle usable again.
    void set_budget(std::size_t budget);

    /// Tags subsequent probes in the per-phase counters.
    void set_phase(std::string phase) { phase_ = std::move(phase); }

    /// Empty unless constructed with keep_log.
    const std::vector<ProbeRecord>& log() const { return log_; }

private:
    ClassifierPtr model_;
    std::size_t dimension_;
    ProbeLedger ledger_;
    std::string phase_ = "explore";
    bool keep_log_;
    std::vector<ProbeRecord> log_;
};

/// Cap on the "effectively unlimited" oracle; guards runaway loops.
inline constexpr std::size_t kFreeOracleCap = 1'000'000;

/// Oracle over a model the adversary owns outright (the surrogate); budget
/// is kFreeOracleCap so probing is effectively free but still accounted.
BlackBoxOracle free_oracle(ClassifierPtr model, std::size_t dimension,
                           bool keep_log = false);

} // namespace evasion
