#include <doctest.h>

#include <cmath>
#include <memory>

#include "evasion/attack_ap.hpp"
#include "evasion/errors.hpp"
#include "evasion/metrics.hpp"

#include "helpers.hpp"

using namespace evasion;

TEST_SUITE_BEGIN("attack_ap");

TEST_CASE("radius_at endpoints and the mid-yield point") {
    CHECK(radius_at(0.1, 0.5, 0, 1) == doctest::Approx(0.1));
    CHECK(radius_at(0.1, 0.5, 0, 777) == doctest::Approx(0.1));
    CHECK(radius_at(0.1, 0.5, 10, 10) == doctest::Approx(0.5));
    CHECK(radius_at(0.1, 0.5, 5, 10) == doctest::Approx(0.3));
    CHECK_THROWS_AS(radius_at(0.1, 0.5, 0, 0), ContractError);
    CHECK_THROWS_AS(radius_at(0.1, 0.5, 5, 4), ContractError);
}

TEST_CASE("radius_at matches direct formula evaluation on random inputs") {
    Rng rng(40);
    for (int t = 0; t < 1000; ++t) {
        const auto i = 1 + rng.uniform_index(10000);
        const auto count = rng.uniform_index(i + 1);
        const double r_min = rng.uniform(0.0, 0.4);
        const double r_max = r_min + rng.uniform(0.0, 0.6);
        const double expected =
            (r_max - r_min) *
                (static_cast<double>(count) / static_cast<double>(i)) +
            r_min;
        CHECK(std::fabs(radius_at(r_min, r_max, count, i) - expected) <= 1e-12);
    }
}

TEST_CASE("perturb with zero scale is the identity") {
    Rng rng(1);
    const Sample x{0.2, 0.8, 0.5};
    CHECK(perturb(x, 0.0, rng) == x);
}

TEST_CASE("perturb is zero-mean: Monte-Carlo average stays at the center") {
    Rng rng(2);
    const Sample center{0.5, 0.5};
    double sx = 0.0, sy = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const Sample p = perturb(center, 0.1, rng);
        sx += p[0];
        sy += p[1];
    }
    CHECK(std::fabs(sx / n - 0.5) < 0.02);
    CHECK(std::fabs(sy / n - 0.5) < 0.02);
}

TEST_CASE("perturb clamps every coordinate into [0,1]") {
    Rng rng(3);
    const Sample edge{1.0, 0.0};
    for (int i = 0; i < 1000; ++i) {
        const Sample p = perturb(edge, 0.7, rng);
        CHECK(p[0] <= 1.0);
        CHECK(p[0] >= 0.0);
        CHECK(p[1] >= 0.0);
        CHECK(p[1] <= 1.0);
    }
}

TEST_CASE("explore_ap against an accept-all oracle keeps every probe") {
    Rng rng(4);
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 2, 200);
    APConfig cfg;
    cfg.b_explore = 200;
    const std::vector<Sample> seeds{{0.5, 0.5}};
    const AnchorSet anchors = explore_ap(seeds, oracle, cfg, rng);
    CHECK(anchors.anchors.size() == seeds.size() + 200);
    CHECK(anchors.yield == 1.0);
    CHECK(anchors.seed_count == 1);
    CHECK(oracle.used() == 200);
}

TEST_CASE("explore_ap against a reject-all oracle keeps only the seeds") {
    Rng rng(5);
    auto model = std::make_shared<testutil::ConstantModel>(Label::Malicious);
    BlackBoxOracle oracle(model, 2, 150);
    APConfig cfg;
    cfg.b_explore = 150;
    const std::vector<Sample> seeds{{0.2, 0.2}, {0.3, 0.3}};
    const AnchorSet anchors = explore_ap(seeds, oracle, cfg, rng);
    CHECK(anchors.anchors.size() == 2);
    CHECK(anchors.yield == 0.0);
    CHECK(oracle.used() == 150);
}

TEST_CASE("explore_ap anchors stay inside a half-plane oracle's region") {
    Rng rng(6);
    auto model = std::make_shared<testutil::HalfPlaneModel>(0.5);
    BlackBoxOracle oracle(model, 2, 500);
    APConfig cfg;
    cfg.b_explore = 500;
    const AnchorSet anchors = explore_ap({{0.25, 0.5}}, oracle, cfg, rng);
    for (const auto& a : anchors.anchors)
        CHECK(a[0] < 0.5);
    CHECK(anchors.anchors.size() > 1); // some probes must land inside
}

TEST_CASE("explore_ap rejects an empty seed set and propagates exhaustion") {
    Rng rng(7);
    auto model = std::make_shared<testutil::ConstantModel>(Label::Legitimate);
    BlackBoxOracle oracle(model, 2, 10);
    APConfig cfg;
    cfg.b_explore = 50; // more than the oracle has left
    CHECK_THROWS_AS(explore_ap({}, oracle, cfg, rng), ContractError);
    CHECK_THROWS_AS(explore_ap({{0.5, 0.5}}, oracle, cfg, rng), BudgetExhausted);
}

TEST_CASE("anchor soundness: every non-seed anchor re-predicts Legitimate") {
    Rng rng(8);
    const Dataset ds = make_synthetic(SyntheticKind::Separable2d, 100, 44);
    const auto defender = train_knn(ds, 3);
    BlackBoxOracle oracle(defender, 2, 400);
    APConfig cfg;
    cfg.b_explore = 400;
    const AnchorSet anchors = explore_ap({ds.samples[0]}, oracle, cfg, rng);
    for (std::size_t i = anchors.seed_count; i < anchors.anchors.size(); ++i)
        CHECK(defender->predict(anchors.anchors[i]) == Label::Legitimate);
}

TEST_CASE("exploit_ap with one anchor and zero radius repeats the anchor") {
    Rng rng(9);
    AnchorSet anchors;
    anchors.anchors = {{0.4, 0.6}};
    anchors.seed_count = 1;
    APConfig cfg;
    cfg.r_exploit = 0.0;
    cfg.n_attack = 25;
    const AttackSet attacks = exploit_ap(anchors, cfg, rng);
    REQUIRE(attacks.samples.size() == 25);
    for (const auto& s : attacks.samples)
        CHECK(s == Sample{0.4, 0.6});
}

TEST_CASE("convex_blend endpoints select each input exactly") {
    const Sample a{0.1, 0.9, 0.3};
    const Sample b{0.7, 0.2, 0.8};
    CHECK(convex_blend(a, b, 1.0) == a);
    CHECK(convex_blend(a, b, 0.0) == b);
    const Sample mid = convex_blend(a, b, 0.5);
    CHECK(mid[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(mid[1] == doctest::Approx(0.55).epsilon(1e-15));
    CHECK(mid[2] == doctest::Approx(0.55).epsilon(1e-15));
}

TEST_CASE("exploit_ap with zero radius emits convex combinations of anchors") {
    Rng rng(10);
    AnchorSet anchors;
    anchors.anchors = {{0.0, 0.0}, {1.0, 1.0}};
    anchors.seed_count = 2;
    APConfig cfg;
    cfg.r_exploit = 0.0;
    cfg.n_attack = 300;
    const AttackSet attacks = exploit_ap(anchors, cfg, rng);
    for (const auto& s : attacks.samples) {
        // on the segment between the anchors: both coordinates carry the
        // same recovered lambda
        CHECK(std::fabs(s[0] - s[1]) <= 1e-12);
        CHECK(s[0] >= 0.0);
        CHECK(s[0] <= 1.0);
    }
}

TEST_CASE("exploit_ap refuses an empty anchor set") {
    Rng rng(11);
    AnchorSet anchors;
    APConfig cfg;
    CHECK_THROWS_AS(exploit_ap(anchors, cfg, rng), AttackInfeasible);
}

TEST_CASE("attack samples stay inside the unit cube") {
    Rng rng(12);
    AnchorSet anchors;
    anchors.anchors = {{0.1, 0.9}, {0.95, 0.05}};
    anchors.seed_count = 2;
    APConfig cfg;
    cfg.r_exploit = 0.5;
    cfg.n_attack = 500;
    const AttackSet attacks = exploit_ap(anchors, cfg, rng);
    for (const auto& s : attacks.samples)
        for (double v : s)
            CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("anchors export as an all-Legitimate dataset") {
    AnchorSet anchors;
    anchors.anchors = {{0.1, 0.2}, {0.3, 0.4}};
    anchors.seed_count = 1;
    const Dataset ds = anchors_to_dataset(anchors, "anchors");
    CHECK(ds.size() == 2);
    CHECK(ds.d == 2);
    CHECK(ds.count(Label::Legitimate) == 2);
}

TEST_SUITE_END();
