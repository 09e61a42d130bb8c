#include "evasion/oracle.hpp"

#include "evasion/errors.hpp"

namespace evasion {

BlackBoxOracle::BlackBoxOracle(ClassifierPtr model, std::size_t dimension,
                               std::size_t budget, bool keep_log)
    : model_(std::move(model)), dimension_(dimension), keep_log_(keep_log) {
    if (!model_)
        throw ContractError("BlackBoxOracle: null model");
    ledger_.budget = budget;
}

Label BlackBoxOracle::probe(const Sample& x) {
    if (x.size() != dimension_)
        throw ContractError("probe: sample has dimension " +
                            std::to_string(x.size()) + ", oracle expects " +
                            std::to_string(dimension_));
    if (ledger_.used >= ledger_.budget)
        throw BudgetExhausted("probe budget of " + std::to_string(ledger_.budget) +
                              " is spent");

    const Label label = model_->predict(x);
    const std::size_t index = ledger_.used;
    ++ledger_.used;
    ++ledger_.per_phase[phase_];
    if (keep_log_)
        log_.push_back({x, label, index});
    return label;
}

void BlackBoxOracle::set_budget(std::size_t budget) {
    if (budget < ledger_.used)
        throw ContractError("set_budget: below probes already used");
    ledger_.budget = budget;
}

BlackBoxOracle free_oracle(ClassifierPtr model, std::size_t dimension,
                           bool keep_log) {
    return BlackBoxOracle(std::move(model), dimension, kFreeOracleCap, keep_log);
}

} // namespace evasion
