#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace evasion {

/// A point in [0,1]^d. Dimension is fixed by the owning dataset.
using Sample = std::vector<double>;

/// Binary class. Serialized as 0 (Legitimate) and 1 (Malicious).
enum class Label : int {
    Legitimate = 0,
    Malicious = 1,
};

inline int to_int(Label l) { return static_cast<int>(l); }

/// Named collection of labeled samples. Immutable once built; safe to share
/// read-only across concurrent experiment runs.
struct Dataset {
    std::string name;
    std::size_t d = 0;
    std::vector<Sample> samples;
    std::vector<Label> labels;

    std::size_t size() const { return samples.size(); }
    std::size_t count(Label l) const;
    bool has_both_classes() const {
        return count(Label::Legitimate) > 0 && count(Label::Malicious) > 0;
    }
    void push(Sample s, Label l) {
        samples.push_back(std::move(s));
        labels.push_back(l);
    }
};

/// Loads a CSV with header `f0,...,f{d-1},label` (label in {0,1}) and
/// optionally applies per-feature min-max normalization over the whole file.
/// Constant features map to 0. Row order is preserved. A single-class file
/// loads fine but is flagged on stderr.
Dataset load_csv(const std::filesystem::path& path, bool normalize = true);

/// Writes the same schema load_csv reads. Values round-trip exactly.
void save_csv(const Dataset& ds, const std::filesystem::path& path);

/// In-place per-feature min-max rescale; constant columns become all zeros.
void normalize_minmax(Dataset& ds);

/// Seeded permutation of the rows; the (sample,label) pairing is untouched.
Dataset shuffle(const Dataset& ds, std::uint64_t seed);

/// Seeded disjoint partition with sizes ceil(f*n) and n-ceil(f*n), clamped
/// so both parts stay nonempty. Requires at least two rows.
std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction,
                                  std::uint64_t seed);

enum class SyntheticKind {
    /// Two Gaussian blobs, linearly separable with a margin band.
    Separable2d,
    /// Two disjoint Legitimate blobs with a Malicious band between them,
    /// so the Legitimate region is non-convex.
    TwoBlobNonconvex,
};

SyntheticKind synthetic_kind_from(std::string_view name);
bool is_synthetic_kind(std::string_view name);
std::string to_string(SyntheticKind kind);

/// Deterministic 2-d fixture generator, n >= 20, classes balanced.
Dataset make_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed);

} // namespace evasion
