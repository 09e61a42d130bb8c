#include "evasion/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>

#include "evasion/errors.hpp"
#include "evasion/rng.hpp"

namespace evasion {

std::size_t Dataset::count(Label l) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t row, std::size_t col) {
    const std::string t = trim(field);
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size())
        throw ParseError("row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": cannot parse '" + field +
                         "' as a real number");
    if (!std::isfinite(v))
        throw ParseError("row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": non-finite value");
    return v;
}

} // namespace

Dataset load_csv(const std::filesystem::path& path, bool normalize) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw SchemaError(path.string() + ": missing header row");
    const auto header = split_fields(line);
    if (header.size() < 2 || trim(header.back()) != "label")
        throw SchemaError(path.string() + ": last header column must be 'label'");

    Dataset ds;
    ds.name = path.stem().string();
    ds.d = header.size() - 1;

    std::size_t row = 1; // header is row 0
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            ++row;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        Sample s(ds.d);
        for (std::size_t j = 0; j < ds.d; ++j)
            s[j] = parse_double(fields[j], row, j);
        const double lv = parse_double(fields[ds.d], row, ds.d);
        if (lv != 0.0 && lv != 1.0)
            throw SchemaError("row " + std::to_string(row) +
                              ": label must be 0 or 1, got '" + fields[ds.d] + "'");
        ds.push(std::move(s), lv == 1.0 ? Label::Malicious : Label::Legitimate);
        ++row;
    }

    if (normalize)
        normalize_minmax(ds);
    if (ds.size() > 0 && !ds.has_both_classes())
        std::cerr << "warning: " << path.string()
                  << " contains a single class only\n";
    return ds;
}

void save_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write " + path.string());
    for (std::size_t j = 0; j < ds.d; ++j)
        out << 'f' << j << ',';
    out << "label\n";
    char buf[64];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            auto [p, ec] = std::to_chars(buf, buf + sizeof buf, ds.samples[i][j]);
            out.write(buf, p - buf);
            out << ',';
        }
        out << to_int(ds.labels[i]) << '\n';
    }
    if (!out)
        throw IoError("write failed for " + path.string());
}

void normalize_minmax(Dataset& ds) {
    if (ds.size() == 0)
        return;
    for (std::size_t j = 0; j < ds.d; ++j) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& s : ds.samples) {
            lo = std::min(lo, s[j]);
            hi = std::max(hi, s[j]);
        }
        const double range = hi - lo;
        for (auto& s : ds.samples)
            s[j] = range > 0.0 ? (s[j] - lo) / range : 0.0;
    }
}

Dataset shuffle(const Dataset& ds, std::uint64_t seed) {
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);

    Dataset out;
    out.name = ds.name;
    out.d = ds.d;
    out.samples.reserve(ds.size());
    out.labels.reserve(ds.size());
    for (std::size_t i : order)
        out.push(ds.samples[i], ds.labels[i]);
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction,
                                  std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ContractError("split: fraction must be in (0,1)");
    const std::size_t n = ds.size();
    if (n < 2)
        throw ContractError("split: need at least two rows to keep both parts nonempty");

    auto n_first = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(n)));
    n_first = std::clamp<std::size_t>(n_first, 1, n - 1);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);

    Dataset a, b;
    a.name = ds.name;
    b.name = ds.name;
    a.d = b.d = ds.d;
    for (std::size_t i = 0; i < n; ++i) {
        auto& part = i < n_first ? a : b;
        part.push(ds.samples[order[i]], ds.labels[order[i]]);
    }
    return {std::move(a), std::move(b)};
}

SyntheticKind synthetic_kind_from(std::string_view name) {
    if (name == "separable-2d")
        return SyntheticKind::Separable2d;
    if (name == "two-blob-nonconvex")
        return SyntheticKind::TwoBlobNonconvex;
    throw ConfigError("unknown synthetic kind: " + std::string(name));
}

bool is_synthetic_kind(std::string_view name) {
    return name == "separable-2d" || name == "two-blob-nonconvex";
}

std::string to_string(SyntheticKind kind) {
    return kind == SyntheticKind::Separable2d ? "separable-2d"
                                              : "two-blob-nonconvex";
}

namespace {

bool in_unit_box(double x, double y) {
    return x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0;
}

// Gaussian blob with rejection against a predicate; keeps the sample inside
// the unit box and the accept region, so the class geometry is exact.
template <typename Accept>
Sample blob_point(Rng& rng, double cx, double cy, double stddev, Accept accept) {
    for (;;) {
        const double x = rng.normal(cx, stddev);
        const double y = rng.normal(cy, stddev);
        if (in_unit_box(x, y) && accept(x, y))
            return {x, y};
    }
}

} // namespace

Dataset make_synthetic(SyntheticKind kind, std::size_t n, std::uint64_t seed) {
    if (n < 20)
        throw ContractError("make_synthetic: n must be at least 20");

    Rng rng(seed);
    Dataset ds;
    ds.name = to_string(kind);
    ds.d = 2;
    const std::size_t n_legit = n / 2;
    const std::size_t n_mal = n - n_legit;

    if (kind == SyntheticKind::Separable2d) {
        // Legitimate below x+y = 0.9, Malicious above x+y = 1.1: separable
        // by x+y = 1 with a hard margin band.
        for (std::size_t i = 0; i < n_legit; ++i)
            ds.push(blob_point(rng, 0.25, 0.25, 0.12,
                               [](double x, double y) { return x + y <= 0.9; }),
                    Label::Legitimate);
        for (std::size_t i = 0; i < n_mal; ++i)
            ds.push(blob_point(rng, 0.75, 0.75, 0.12,
                               [](double x, double y) { return x + y >= 1.1; }),
                    Label::Malicious);
    } else {
        // Legitimate splits into two blobs left and right of a full-height
        // Malicious band; the Legitimate region is non-convex and the blob
        // midpoint (0.5, 0.5) sits inside the band.
        const std::size_t n_a = n_legit / 2;
        for (std::size_t i = 0; i < n_legit; ++i) {
            const bool left = i < n_a;
            ds.push(blob_point(rng, left ? 0.15 : 0.85, 0.5, 0.06,
                               [left](double x, double) {
                                   return left ? x <= 0.28 : x >= 0.72;
                               }),
                    Label::Legitimate);
        }
        for (std::size_t i = 0; i < n_mal; ++i) {
            const double x = rng.uniform(0.38, 0.62);
            const double y = rng.uniform(0.05, 0.95);
            ds.push({x, y}, Label::Malicious);
        }
    }
    return ds;
}

} // namespace evasion
