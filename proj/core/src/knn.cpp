#include <algorithm>
#include <sstream>
#include <vector>

#include "evasion/classifiers.hpp"
#include "evasion/errors.hpp"

namespace evasion {

namespace {

double sq_dist(const Sample& a, const Sample& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

class KnnModel final : public TrainedClassifier {
public:
    KnnModel(std::vector<Sample> points, std::vector<Label> labels, int k)
        : points_(std::move(points)), labels_(std::move(labels)), k_(k) {}

    Label predict(const Sample& x) const override {
        // (distance, training index) pairs: equal distances break on index.
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(points_.size());
        for (std::size_t i = 0; i < points_.size(); ++i)
            dist.emplace_back(sq_dist(x, points_[i]), i);
        const auto kth = dist.begin() + k_;
        std::partial_sort(dist.begin(), kth, dist.end());
        std::size_t malicious = 0;
        for (auto it = dist.begin(); it != kth; ++it)
            malicious += labels_[it->second] == Label::Malicious;
        return majority_vote(malicious, static_cast<std::size_t>(k_));
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "knn(k=" << k_ << ")";
        return os.str();
    }

private:
    std::vector<Sample> points_;
    std::vector<Label> labels_;
    int k_;
};

} // namespace

ClassifierPtr train_knn(const Dataset& ds, int k) {
    if (k < 1)
        throw ConfigError("train_knn: k must be positive");
    if (k % 2 == 0)
        throw ConfigError("train_knn: k must be odd");
    if (static_cast<std::size_t>(k) > ds.size())
        throw ContractError("train_knn: k exceeds the training set size");
    return std::make_shared<KnnModel>(ds.samples, ds.labels, k);
}

} // namespace evasion
