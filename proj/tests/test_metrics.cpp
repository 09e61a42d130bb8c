#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "evasion/errors.hpp"
#include "evasion/metrics.hpp"
#include "evasion/rng.hpp"

#include "helpers.hpp"

using namespace evasion;

namespace {

RunRecord make_record(const std::string& dataset, const std::string& defender,
                      const std::string& method, int run, double ear_value) {
    RunRecord r;
    r.dataset = dataset;
    r.defender = defender;
    r.method = method;
    r.run_index = run;
    r.ear = ear_value;
    return r;
}

} // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("ear trivial endpoints") {
    testutil::ConstantModel accept(Label::Legitimate);
    testutil::ConstantModel reject(Label::Malicious);
    AttackSet attacks;
    for (int i = 0; i < 100; ++i)
        attacks.samples.push_back({i / 100.0});
    CHECK(ear(accept, attacks) == 1.0);
    CHECK(ear(reject, attacks) == 0.0);
    CHECK_THROWS_AS(ear(accept, AttackSet{}), ContractError);
}

TEST_CASE("ear is the exact false-negative fraction") {
    testutil::HalfPlaneModel defender(0.5);
    AttackSet attacks;
    for (int i = 0; i < 2000; ++i)
        attacks.samples.push_back({i < 1000 ? 0.25 : 0.75});
    CHECK(ear(defender, attacks) == 0.5);
}

TEST_CASE("ear matches an independent recount on random attack sets") {
    Rng rng(60);
    testutil::HalfPlaneModel defender(0.37);
    AttackSet attacks;
    for (int i = 0; i < 5000; ++i)
        attacks.samples.push_back({rng.uniform()});

    std::size_t false_negatives = 0;
    for (const auto& s : attacks.samples)
        false_negatives += s[0] < 0.37;
    CHECK(ear(defender, attacks) ==
          static_cast<double>(false_negatives) / 5000.0);
}

TEST_CASE("aggregate: single record has zero std by convention") {
    const auto rows = aggregate_rows({make_record("d", "linear", "ap", 0, 0.8)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].runs == 1);
    CHECK(rows[0].ear_mean == 0.8);
    CHECK(rows[0].ear_std == 0.0);
}

TEST_CASE("aggregate: hand-computed sample std") {
    const auto rows = aggregate_rows({make_record("d", "linear", "ap", 0, 0.9),
                                      make_record("d", "linear", "ap", 1, 1.0)});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].ear_mean == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(rows[0].ear_std == doctest::Approx(0.070710678).epsilon(1e-6));
}

TEST_CASE("aggregate groups never merge across keys") {
    const auto rows = aggregate_rows({make_record("a", "linear", "ap", 0, 0.5),
                                      make_record("b", "linear", "ap", 0, 0.7),
                                      make_record("a", "knn", "ap", 0, 0.9),
                                      make_record("a", "linear", "re", 0, 0.4)});
    CHECK(rows.size() == 4);
}

TEST_CASE("aggregate means are permutation-invariant") {
    std::vector<RunRecord> records;
    Rng rng(61);
    for (int i = 0; i < 20; ++i)
        records.push_back(make_record("d", "linear", i % 2 ? "ap" : "re", i,
                                      rng.uniform()));
    auto shuffled = records;
    std::reverse(shuffled.begin(), shuffled.end());

    const auto a = aggregate_rows(records);
    const auto b = aggregate_rows(shuffled);
    REQUIRE(a.size() == b.size());
    for (const auto& row : a) {
        const auto match = std::find_if(b.begin(), b.end(), [&](const auto& r) {
            return r.dataset == row.dataset && r.defender == row.defender &&
                   r.method == row.method;
        });
        REQUIRE(match != b.end());
        CHECK(match->ear_mean == doctest::Approx(row.ear_mean).epsilon(1e-12));
        CHECK(match->ear_std == doctest::Approx(row.ear_std).epsilon(1e-12));
    }
}

TEST_CASE("fidelity averages only over records that carry it") {
    auto with = make_record("d", "linear", "re", 0, 0.9);
    with.surrogate_fidelity = 0.8;
    auto without = make_record("d", "linear", "re", 1, 0.9);
    const auto rows = aggregate_rows({with, without});
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].fidelity_mean.has_value());
    CHECK(*rows[0].fidelity_mean == 0.8);
}

TEST_CASE("report aggregates are recomputed from records on demand") {
    AttackReport report = aggregate({make_record("d", "linear", "ap", 0, 0.6)});
    CHECK(report.aggregates().size() == 1);
    report.records.push_back(make_record("d", "knn", "ap", 0, 0.7));
    CHECK(report.aggregates().size() == 2); // no cached drift
}

TEST_SUITE_END();
