#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "evasion/classifiers.hpp"
#include "evasion/errors.hpp"
#include "evasion/rng.hpp"

namespace evasion {

namespace {

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    Label leaf = Label::Legitimate;
};

struct GrowParams {
    int max_depth = 16;
    int min_leaf = 1;
    int mtry = 0; // candidate features per split; 0 means all
};

double entropy(std::size_t malicious, std::size_t total) {
    if (total == 0 || malicious == 0 || malicious == total)
        return 0.0;
    const double p = static_cast<double>(malicious) / static_cast<double>(total);
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const std::vector<std::size_t>& rows,
                const GrowParams& params, Rng* rng)
        : ds_(ds), params_(params), rng_(rng) {
        root_ = build(rows, 0);
    }

    std::vector<TreeNode> take() { return std::move(nodes_); }
    int root() const { return root_; }

private:
    int make_leaf(std::size_t malicious, std::size_t total) {
        TreeNode node;
        node.leaf = majority_vote(malicious, total);
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    // Candidate features for this split, ascending so equal-gain ties
    // resolve to the lowest feature index.
    std::vector<std::size_t> candidate_features() {
        const std::size_t d = ds_.d;
        if (params_.mtry <= 0 || static_cast<std::size_t>(params_.mtry) >= d) {
            std::vector<std::size_t> all(d);
            std::iota(all.begin(), all.end(), std::size_t{0});
            return all;
        }
        std::vector<std::size_t> pool(d);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        std::vector<std::size_t> picked;
        picked.reserve(static_cast<std::size_t>(params_.mtry));
        for (int t = 0; t < params_.mtry; ++t) {
            const std::size_t j = rng_->uniform_index(pool.size());
            picked.push_back(pool[j]);
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
        }
        std::sort(picked.begin(), picked.end());
        return picked;
    }

    int build(const std::vector<std::size_t>& rows, int depth) {
        std::size_t malicious = 0;
        for (std::size_t i : rows)
            malicious += ds_.labels[i] == Label::Malicious;
        const std::size_t total = rows.size();

        if (malicious == 0 || malicious == total)
            return make_leaf(malicious, total);
        if (depth >= params_.max_depth ||
            total < 2 * static_cast<std::size_t>(params_.min_leaf))
            return make_leaf(malicious, total);

        const double parent_h = entropy(malicious, total);
        double best_gain = 0.0;
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        bool found = false;

        std::vector<std::pair<double, Label>> vals;
        for (std::size_t f : candidate_features()) {
            vals.clear();
            vals.reserve(total);
            for (std::size_t i : rows)
                vals.emplace_back(ds_.samples[i][f], ds_.labels[i]);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::size_t left_mal = 0;
            for (std::size_t pos = 1; pos < total; ++pos) {
                left_mal += vals[pos - 1].second == Label::Malicious;
                if (vals[pos].first == vals[pos - 1].first)
                    continue; // threshold must fall between distinct values
                const std::size_t nl = pos;
                const std::size_t nr = total - pos;
                if (nl < static_cast<std::size_t>(params_.min_leaf) ||
                    nr < static_cast<std::size_t>(params_.min_leaf))
                    continue;
                const double hl = entropy(left_mal, nl);
                const double hr = entropy(malicious - left_mal, nr);
                const double gain =
                    parent_h - (static_cast<double>(nl) * hl +
                                static_cast<double>(nr) * hr) /
                                   static_cast<double>(total);
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = (vals[pos - 1].first + vals[pos].first) / 2.0;
                    found = true;
                }
            }
        }

        if (!found)
            return make_leaf(malicious, total);

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t i : rows) {
            if (ds_.samples[i][best_feature] <= best_threshold)
                left_rows.push_back(i);
            else
                right_rows.push_back(i);
        }

        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        TreeNode node;
        node.feature = static_cast<int>(best_feature);
        node.threshold = best_threshold;
        node.left = left;
        node.right = right;
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    const Dataset& ds_;
    GrowParams params_;
    Rng* rng_;
    std::vector<TreeNode> nodes_;
    int root_ = -1;
};

Label walk(const std::vector<TreeNode>& nodes, int root, const Sample& x) {
    int cur = root;
    for (;;) {
        const TreeNode& node = nodes[static_cast<std::size_t>(cur)];
        if (node.feature < 0)
            return node.leaf;
        cur = x[static_cast<std::size_t>(node.feature)] <= node.threshold
                  ? node.left
                  : node.right;
    }
}

class DecisionTreeModel final : public TrainedClassifier {
public:
    DecisionTreeModel(std::vector<TreeNode> nodes, int root, GrowParams params)
        : nodes_(std::move(nodes)), root_(root), params_(params) {}

    Label predict(const Sample& x) const override {
        return walk(nodes_, root_, x);
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "dtree(max_depth=" << params_.max_depth
           << ",min_leaf=" << params_.min_leaf << ")";
        return os.str();
    }

private:
    std::vector<TreeNode> nodes_;
    int root_;
    GrowParams params_;
};

class ForestModel final : public TrainedClassifier {
public:
    struct Tree {
        std::vector<TreeNode> nodes;
        int root;
    };

    ForestModel(std::vector<Tree> trees, int n_trees)
        : trees_(std::move(trees)), n_trees_(n_trees) {}

    Label predict(const Sample& x) const override {
        std::size_t malicious = 0;
        for (const auto& t : trees_)
            malicious += walk(t.nodes, t.root, x) == Label::Malicious;
        return majority_vote(malicious, trees_.size());
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "rforest(trees=" << n_trees_ << ")";
        return os.str();
    }

private:
    std::vector<Tree> trees_;
    int n_trees_;
};

} // namespace

ClassifierPtr train_tree(const Dataset& ds, int max_depth, int min_leaf) {
    if (ds.size() == 0)
        throw TrainingError("train_tree: empty dataset");
    if (max_depth < 0 || min_leaf < 1)
        throw ConfigError("train_tree: bad depth or leaf limit");
    std::vector<std::size_t> rows(ds.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    GrowParams params{max_depth, min_leaf, 0};
    TreeBuilder builder(ds, rows, params, nullptr);
    const int root = builder.root();
    return std::make_shared<DecisionTreeModel>(builder.take(), root, params);
}

ClassifierPtr train_forest(const Dataset& ds, int n_trees, std::uint64_t seed,
                           const ForestOptions& opts) {
    if (ds.size() == 0)
        throw TrainingError("train_forest: empty dataset");
    if (n_trees < 1)
        throw ContractError("train_forest: n_trees must be at least 1");

    const int mtry =
        opts.bootstrap
            ? static_cast<int>(std::ceil(std::sqrt(static_cast<double>(ds.d))))
            : 0;
    GrowParams params{opts.max_depth, opts.min_leaf, mtry};

    std::vector<ForestModel::Tree> trees;
    trees.reserve(static_cast<std::size_t>(n_trees));
    for (int t = 0; t < n_trees; ++t) {
        Rng rng(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1))));
        std::vector<std::size_t> rows(ds.size());
        if (opts.bootstrap) {
            for (auto& r : rows)
                r = rng.uniform_index(ds.size());
        } else {
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        TreeBuilder builder(ds, rows, params, &rng);
        const int root = builder.root();
        trees.push_back({builder.take(), root});
    }
    return std::make_shared<ForestModel>(std::move(trees), n_trees);
}

} // namespace evasion
