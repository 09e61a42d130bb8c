#include <algorithm>
#include <memory>
#include <numeric>

#include "evasion/classifiers.hpp"
#include "evasion/errors.hpp"
#include "evasion/rng.hpp"

namespace evasion {

namespace {

Dataset rows_subset(const Dataset& ds, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.name = ds.name;
    out.d = ds.d;
    out.samples.reserve(rows.size());
    out.labels.reserve(rows.size());
    for (std::size_t i : rows)
        out.push(ds.samples[i], ds.labels[i]);
    return out;
}

} // namespace

double cross_val_accuracy(const Dataset& ds, const Trainer& trainer, int folds,
                          std::uint64_t seed) {
    if (folds < 2)
        throw ConfigError("cross_val_accuracy: need at least 2 folds");
    if (ds.size() < static_cast<std::size_t>(folds))
        throw ContractError("cross_val_accuracy: more folds than rows");

    // Stratified assignment: shuffle each class separately, deal round-robin.
    std::vector<std::size_t> legit, malicious;
    for (std::size_t i = 0; i < ds.size(); ++i)
        (ds.labels[i] == Label::Legitimate ? legit : malicious).push_back(i);
    Rng rng(seed);
    rng.shuffle(legit);
    rng.shuffle(malicious);

    std::vector<int> fold_of(ds.size(), 0);
    int next = 0;
    for (std::size_t i : legit)
        fold_of[i] = next++ % folds;
    for (std::size_t i : malicious)
        fold_of[i] = next++ % folds;

    double acc_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train_rows, test_rows;
        for (std::size_t i = 0; i < ds.size(); ++i)
            (fold_of[i] == f ? test_rows : train_rows).push_back(i);
        if (test_rows.empty())
            throw StratificationError("cross_val_accuracy: empty fold");

        const Dataset train_ds = rows_subset(ds, train_rows);
        if (!train_ds.has_both_classes())
            throw StratificationError(
                "cross_val_accuracy: a fold's training part lost a class");

        const ClassifierPtr model = trainer(train_ds);
        std::size_t hits = 0;
        for (std::size_t i : test_rows)
            hits += model->predict(ds.samples[i]) == ds.labels[i];
        acc_sum += static_cast<double>(hits) / static_cast<double>(test_rows.size());
    }
    return acc_sum / folds;
}

bool is_defender_kind(std::string_view kind) {
    return kind == "linear" || kind == "knn" || kind == "dtree" ||
           kind == "rforest" || kind == "rbf";
}

ClassifierPtr train_defender(const std::string& kind, const Dataset& ds,
                             const DefenderParams& params, std::uint64_t seed) {
    if (kind == "linear")
        return std::make_shared<LinearModel>(train_linear(ds, params.linear_c));
    if (kind == "knn")
        return train_knn(ds, params.knn_k);
    if (kind == "dtree")
        return train_tree(ds, params.tree_max_depth, params.tree_min_leaf);
    if (kind == "rforest") {
        ForestOptions opts;
        opts.max_depth = params.tree_max_depth;
        opts.min_leaf = params.tree_min_leaf;
        return train_forest(ds, params.forest_trees, seed, opts);
    }
    if (kind == "rbf")
        return train_rbf(ds, params.rbf_gamma, params.rbf_c);
    throw ConfigError("unknown defender kind: " + kind);
}

Trainer make_trainer(const std::string& kind, const DefenderParams& params,
                     std::uint64_t seed) {
    if (!is_defender_kind(kind))
        throw ConfigError("unknown defender kind: " + kind);
    return [kind, params, seed](const Dataset& ds) {
        return train_defender(kind, ds, params, seed);
    };
}

} // namespace evasion
