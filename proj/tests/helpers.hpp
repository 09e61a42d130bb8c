#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"

namespace testutil {

inline std::filesystem::path data_dir() {
    return std::filesystem::path(EVASION_DATA_DIR);
}

inline std::filesystem::path write_temp_csv(const std::string& name,
                                            const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

/// Label depends only on the first coordinate: Legitimate iff x0 < boundary.
struct HalfPlaneModel final : evasion::TrainedClassifier {
    double boundary = 0.5;
    explicit HalfPlaneModel(double b = 0.5) : boundary(b) {}
    evasion::Label predict(const evasion::Sample& x) const override {
        return x[0] < boundary ? evasion::Label::Legitimate
                               : evasion::Label::Malicious;
    }
    std::string describe() const override { return "half-plane"; }
};

struct ConstantModel final : evasion::TrainedClassifier {
    evasion::Label label;
    explicit ConstantModel(evasion::Label l) : label(l) {}
    evasion::Label predict(const evasion::Sample&) const override { return label; }
    std::string describe() const override { return "constant"; }
};

/// Sorted multiset of (sample, label) rows for order-insensitive equality.
inline std::vector<std::pair<evasion::Sample, int>>
row_multiset(const evasion::Dataset& ds) {
    std::vector<std::pair<evasion::Sample, int>> rows;
    rows.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        rows.emplace_back(ds.samples[i], evasion::to_int(ds.labels[i]));
    std::sort(rows.begin(), rows.end());
    return rows;
}

} // namespace testutil
