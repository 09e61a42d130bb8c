#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "evasion/dataset.hpp"

namespace evasion {

/// A trained binary classifier. predict is total over [0,1]^d and pure:
/// the same sample always gets the same label.
class TrainedClassifier {
public:
    virtual ~TrainedClassifier() = default;
    virtual Label predict(const Sample& x) const = 0;
    virtual std::string describe() const = 0;
};

using ClassifierPtr = std::shared_ptr<const TrainedClassifier>;
using Trainer = std::function<ClassifierPtr(const Dataset&)>;

/// Linear decision function: Malicious iff w.x + b > 0. Doubles as the
/// defender's linear SVM and the adversary's surrogate.
struct LinearModel final : TrainedClassifier {
    std::vector<double> w;
    double b = 0.0;

    double decision_value(const Sample& x) const;
    Label predict(const Sample& x) const override {
        return decision_value(x) > 0.0 ? Label::Malicious : Label::Legitimate;
    }
    std::string describe() const override;
};

/// Hinge-loss linear SVM with soft-margin penalty c, solved by dual
/// coordinate descent over the bias-augmented problem. Deterministic.
LinearModel train_linear(const Dataset& ds, double c);

/// k-nearest-neighbor majority vote under Euclidean distance. k must be odd
/// (tie avoidance) and at most |ds|. Distance ties break on training index.
ClassifierPtr train_knn(const Dataset& ds, int k);

/// Axis-aligned binary tree grown greedily by information gain over
/// threshold splits; leaves predict the majority label (ties fail closed to
/// Malicious). max_depth 0 yields a constant majority classifier.
ClassifierPtr train_tree(const Dataset& ds, int max_depth = 16, int min_leaf = 1);

struct ForestOptions {
    int max_depth = 16;
    int min_leaf = 1;
    /// When off, every tree sees the full dataset and all features, so a
    /// single-tree forest reproduces train_tree exactly.
    bool bootstrap = true;
};

/// Majority vote over n_trees information-gain trees on bootstrap resamples
/// with ceil(sqrt(d)) candidate features per split. Vote ties fail closed to
/// Malicious. Deterministic for a fixed seed.
ClassifierPtr train_forest(const Dataset& ds, int n_trees, std::uint64_t seed,
                           const ForestOptions& opts = {});

/// RBF-kernel SVM trained by SMO-style pairwise dual updates on the full
/// Gram matrix; intended for desk-scale datasets.
ClassifierPtr train_rbf(const Dataset& ds, double gamma, double c);

/// Fail-closed majority: Malicious wins exact ties.
inline Label majority_vote(std::size_t malicious, std::size_t total) {
    return 2 * malicious >= total ? Label::Malicious : Label::Legitimate;
}

/// Mean held-out accuracy over seed-stratified folds. Every fold's training
/// part must contain both classes.
double cross_val_accuracy(const Dataset& ds, const Trainer& trainer, int folds,
                          std::uint64_t seed);

/// Hyperparameters behind the CLI/config model kind identifiers.
struct DefenderParams {
    double linear_c = 1.0;
    int knn_k = 3;
    int tree_max_depth = 16;
    int tree_min_leaf = 2;
    int forest_trees = 50;
    double rbf_gamma = 0.1;
    double rbf_c = 1.0;
};

/// kind is one of: linear | knn | dtree | rforest | rbf.
ClassifierPtr train_defender(const std::string& kind, const Dataset& ds,
                             const DefenderParams& params, std::uint64_t seed);
Trainer make_trainer(const std::string& kind, const DefenderParams& params,
                     std::uint64_t seed);
bool is_defender_kind(std::string_view kind);

} // namespace evasion
