#include <doctest.h>

#include <memory>

#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"
#include "evasion/errors.hpp"
#include "evasion/oracle.hpp"

#include "helpers.hpp"

using namespace evasion;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("budget boundary: probe succeeds until the budget is spent") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 1, 1);
    CHECK(oracle.probe({0.5}) == Label::Legitimate);
    CHECK(oracle.used() == 1);
    CHECK_THROWS_AS(oracle.probe({0.5}), BudgetExhausted);
    // the failed probe consumed nothing
    CHECK(oracle.used() == 1);
}

TEST_CASE("an exhausted oracle becomes usable again after a budget raise") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Malicious);
    BlackBoxOracle oracle(model, 1, 1);
    oracle.probe({0.0});
    CHECK_THROWS_AS(oracle.probe({0.0}), BudgetExhausted);
    oracle.set_budget(2);
    CHECK(oracle.probe({0.0}) == Label::Malicious);
    CHECK(oracle.used() == 2);
    CHECK_THROWS_AS(oracle.set_budget(1), ContractError);
}

TEST_CASE("probe counts grow by one per call and labels are noise-free") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 2, 100);
    for (std::size_t i = 1; i <= 50; ++i) {
        CHECK(oracle.probe({0.1, 0.2}) == Label::Legitimate);
        CHECK(oracle.used() == i);
    }
}

TEST_CASE("dimension mismatch is a contract error and consumes nothing") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 3, 10);
    CHECK_THROWS_AS(oracle.probe({0.1}), ContractError);
    CHECK(oracle.used() == 0);
}

TEST_CASE("probing a training point matches the unwrapped model") {
    const Dataset ds = make_synthetic(SyntheticKind::Separable2d, 60, 20);
    const auto model = train_knn(ds, 3);
    BlackBoxOracle oracle(model, ds.d, ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        CHECK(oracle.probe(ds.samples[i]) == model->predict(ds.samples[i]));
}

TEST_CASE("free oracle allows many probes and still counts them") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle = free_oracle(model, 1);
    for (int i = 0; i < 10000; ++i)
        oracle.probe({0.5});
    CHECK(oracle.used() == 10000);
    CHECK(oracle.budget() == kFreeOracleCap);
}

TEST_CASE("free oracle still refuses probes past its cap") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle = free_oracle(model, 1);
    const Sample x{0.5};
    for (std::size_t i = 0; i < kFreeOracleCap; ++i)
        oracle.probe(x);
    CHECK(oracle.used() == kFreeOracleCap);
    CHECK_THROWS_AS(oracle.probe(x), BudgetExhausted);
}

TEST_CASE("free oracle keeps its own ledger, isolated from the real one") {
    auto defender = std::make_shared<testutil::HalfPlaneModel>();
    BlackBoxOracle real(defender, 1, 100);
    real.probe({0.3});

    auto surrogate = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle local = free_oracle(surrogate, 1);
    for (int i = 0; i < 500; ++i)
        local.probe({0.5});

    CHECK(real.used() == 1);
    CHECK(local.used() == 500);
}

TEST_CASE("the probe log is opt-in and records the sequence") {
    auto model = std::make_shared<testutil::HalfPlaneModel>();
    BlackBoxOracle quiet(model, 1, 10);
    quiet.probe({0.1});
    CHECK(quiet.log().empty());

    BlackBoxOracle logged(model, 1, 10, true);
    logged.probe({0.1});
    logged.probe({0.9});
    REQUIRE(logged.log().size() == 2);
    CHECK(logged.log()[0].label == Label::Legitimate);
    CHECK(logged.log()[1].label == Label::Malicious);
    CHECK(logged.log()[1].index == 1);
}

TEST_CASE("per-phase counters split the ledger") {
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 1, 10);
    oracle.set_phase("explore");
    oracle.probe({0.1});
    oracle.probe({0.2});
    oracle.set_phase("recheck");
    oracle.probe({0.3});
    CHECK(oracle.ledger().per_phase.at("explore") == 2);
    CHECK(oracle.ledger().per_phase.at("recheck") == 1);
    CHECK(oracle.used() == 3);
}

TEST_SUITE_END();
