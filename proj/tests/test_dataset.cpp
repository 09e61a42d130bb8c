#include <doctest.h>

#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"
#include "evasion/errors.hpp"
#include "evasion/rng.hpp"

#include "helpers.hpp"

using namespace evasion;

TEST_SUITE_BEGIN("dataset");

TEST_CASE("load_csv applies min-max normalization to column endpoints") {
    const auto path = testutil::write_temp_csv("minmax.csv",
                                               "f0,f1,label\n"
                                               "2,4,0\n"
                                               "6,8,1\n");
    const Dataset ds = load_csv(path, true);
    REQUIRE(ds.size() == 2);
    CHECK(ds.d == 2);
    CHECK(ds.samples[0] == Sample{0.0, 0.0});
    CHECK(ds.samples[1] == Sample{1.0, 1.0});
    CHECK(ds.labels[0] == Label::Legitimate);
    CHECK(ds.labels[1] == Label::Malicious);
}

TEST_CASE("constant feature columns normalize to zero") {
    const auto path = testutil::write_temp_csv("const.csv",
                                               "f0,f1,label\n"
                                               "5,1,0\n"
                                               "5,2,1\n"
                                               "5,3,0\n");
    const Dataset ds = load_csv(path, true);
    for (const auto& s : ds.samples)
        CHECK(s[0] == 0.0);
}

TEST_CASE("bundled cancer fixture loads with 699 rows and d=10") {
    const Dataset ds = load_csv(testutil::data_dir() / "cancer.csv", true);
    CHECK(ds.size() == 699);
    CHECK(ds.d == 10);
    CHECK(ds.has_both_classes());
    for (const auto& s : ds.samples)
        for (double v : s)
            CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("malformed rows and bad labels are rejected with row context") {
    const auto bad_field = testutil::write_temp_csv("badfield.csv",
                                                    "f0,label\nx,0\n");
    CHECK_THROWS_WITH_AS(load_csv(bad_field, true),
                         doctest::Contains("row 1"), ParseError);

    const auto bad_count = testutil::write_temp_csv("badcount.csv",
                                                    "f0,f1,label\n1,0\n");
    CHECK_THROWS_AS(load_csv(bad_count, true), ParseError);

    const auto bad_label = testutil::write_temp_csv("badlabel.csv",
                                                    "f0,label\n1,2\n");
    CHECK_THROWS_AS(load_csv(bad_label, true), SchemaError);

    const auto bad_header = testutil::write_temp_csv("badheader.csv",
                                                     "f0,f1\n1,2\n");
    CHECK_THROWS_AS(load_csv(bad_header, true), SchemaError);
}

TEST_CASE("single-class files load but are flagged") {
    const auto path = testutil::write_temp_csv("oneclass.csv",
                                               "f0,label\n1,0\n2,0\n");
    const Dataset ds = load_csv(path, true);
    CHECK(ds.size() == 2);
    CHECK_FALSE(ds.has_both_classes());
}

TEST_CASE("normalization is idempotent") {
    Rng rng(11);
    Dataset ds;
    ds.name = "random";
    ds.d = 4;
    for (int i = 0; i < 40; ++i) {
        Sample s(4);
        for (auto& v : s)
            v = rng.uniform(-3.0, 7.0);
        ds.push(s, i % 2 ? Label::Malicious : Label::Legitimate);
    }
    normalize_minmax(ds);
    Dataset twice = ds;
    normalize_minmax(twice);
    CHECK(twice.samples == ds.samples);
}

TEST_CASE("shuffle keeps the row multiset and is seed-deterministic") {
    Dataset empty;
    empty.d = 3;
    CHECK(shuffle(empty, 1).size() == 0);

    Rng rng(5);
    Dataset ds;
    ds.d = 2;
    for (int i = 0; i < 50; ++i)
        ds.push({rng.uniform(), rng.uniform()},
                rng.uniform() < 0.5 ? Label::Legitimate : Label::Malicious);

    const Dataset a = shuffle(ds, 42);
    const Dataset b = shuffle(ds, 42);
    CHECK(a.samples == b.samples);
    CHECK(a.labels == b.labels);
    CHECK(testutil::row_multiset(a) == testutil::row_multiset(ds));
}

TEST_CASE("split partitions by ceil(f*n) with both parts kept nonempty") {
    Dataset ds;
    ds.d = 1;
    for (int i = 0; i < 10; ++i)
        ds.push({i / 10.0}, i % 2 ? Label::Malicious : Label::Legitimate);

    auto [a, b] = split(ds, 0.7, 9);
    CHECK(a.size() == 7);
    CHECK(b.size() == 3);

    auto joined = testutil::row_multiset(a);
    const auto more = testutil::row_multiset(b);
    joined.insert(joined.end(), more.begin(), more.end());
    std::sort(joined.begin(), joined.end());
    CHECK(joined == testutil::row_multiset(ds));

    Dataset two;
    two.d = 1;
    two.push({0.0}, Label::Legitimate);
    two.push({1.0}, Label::Malicious);
    auto [c, d] = split(two, 0.999, 1);
    CHECK(c.size() == 1);
    CHECK(d.size() == 1);

    CHECK_THROWS_AS(split(ds, 0.0, 1), ContractError);
    CHECK_THROWS_AS(split(ds, 1.0, 1), ContractError);
}

TEST_CASE("separable-2d trains a near-perfect linear defender") {
    const Dataset ds = make_synthetic(SyntheticKind::Separable2d, 200, 3);
    CHECK(ds.size() == 200);
    CHECK(ds.count(Label::Legitimate) == 100);
    const double acc = cross_val_accuracy(
        ds, [](const Dataset& d) {
            return std::make_shared<LinearModel>(train_linear(d, 1.0));
        },
        5, 17);
    CHECK(acc >= 0.95);
}

TEST_CASE("two-blob-nonconvex puts Malicious mass between the legit blobs") {
    const Dataset ds = make_synthetic(SyntheticKind::TwoBlobNonconvex, 300, 3);
    const auto knn = train_knn(ds, 3);
    // midpoint of the two Legitimate blob centers
    CHECK(knn->predict({0.5, 0.5}) == Label::Malicious);
}

TEST_CASE("synthetic fixtures balance classes and respect bounds") {
    const Dataset ds = make_synthetic(SyntheticKind::Separable2d, 20, 8);
    CHECK(ds.count(Label::Legitimate) == 10);
    CHECK(ds.count(Label::Malicious) == 10);
    for (const auto& s : ds.samples)
        for (double v : s)
            CHECK((v >= 0.0 && v <= 1.0));
    CHECK_THROWS_AS(make_synthetic(SyntheticKind::Separable2d, 19, 8),
                    ContractError);
}

TEST_CASE("save_csv round-trips through load_csv exactly") {
    const Dataset ds = make_synthetic(SyntheticKind::Separable2d, 40, 12);
    const auto path =
        std::filesystem::temp_directory_path() / "roundtrip_fixture.csv";
    save_csv(ds, path);
    const Dataset back = load_csv(path, false);
    CHECK(back.samples == ds.samples);
    CHECK(back.labels == ds.labels);
}

TEST_SUITE_END();
