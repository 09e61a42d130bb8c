#pragma once

#include <stdexcept>
#include <string>

namespace evasion {

/// Caller violated an operation's contract (bad argument, wrong dimension).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Invalid configuration value (unknown model kind, even k, bad fraction).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed CSV content (unparseable field, wrong column count).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV header or label column does not match the expected schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Training cannot proceed (single-class dataset, empty input).
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A cross-validation fold ended up without both classes.
struct StratificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The oracle probe budget is spent. The failing probe consumed nothing
/// and may be retried after the budget is raised.
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The attack has no material to work with (empty anchor set or pool).
struct AttackInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An attack run hit an unrecoverable degenerate state.
struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure, annotated with the offending path.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace evasion
