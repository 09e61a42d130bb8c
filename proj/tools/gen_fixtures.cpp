// Regenerates the bundled data/ fixtures. The cancer fixture is a synthetic
// stand-in for a 699x10 tumor-screening table: integer-graded features 1..10
// driven by a per-sample severity latent, benign cases low-grade and
// compact, malignant cases high-grade and dispersed, with enough overlap
// that a linear model lands near 0.97 cross-validated accuracy.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "evasion/dataset.hpp"
#include "evasion/rng.hpp"

namespace {

constexpr std::uint64_t kFixtureSeed = 0x0ca7ab1e2026ULL;
constexpr std::size_t kBenign = 458;
constexpr std::size_t kMalignant = 241;

constexpr double kBenignMean[10] = {2.9, 1.3, 1.4, 1.3, 2.1,
                                    1.3, 2.1, 1.2, 1.1, 1.7};
constexpr double kMalignantMean[10] = {7.2, 6.6, 6.6, 5.5, 5.3,
                                       7.6, 5.9, 5.9, 2.6, 6.2};

double grade(double raw) {
    return std::clamp(std::round(raw), 1.0, 10.0);
}

evasion::Sample benign_row(evasion::Rng& rng) {
    evasion::Sample s(10);
    const double severity = rng.normal(0.0, 1.0);
    for (std::size_t j = 0; j < 10; ++j)
        s[j] = grade(kBenignMean[j] + 0.7 * severity + rng.normal(0.0, 1.0));
    return s;
}

evasion::Sample malignant_row(evasion::Rng& rng) {
    evasion::Sample s(10);
    const double severity = rng.normal(0.0, 1.0);
    for (std::size_t j = 0; j < 10; ++j)
        s[j] = grade(kMalignantMean[j] + 1.7 * severity + rng.normal(0.0, 1.8));
    return s;
}

} // namespace

int main(int argc, char** argv) {
    const std::string out = argc > 1 ? argv[1] : "data/cancer.csv";

    evasion::Rng rng(kFixtureSeed);
    evasion::Dataset ds;
    ds.name = "cancer";
    ds.d = 10;
    for (std::size_t i = 0; i < kBenign; ++i)
        ds.push(benign_row(rng), evasion::Label::Legitimate);
    for (std::size_t i = 0; i < kMalignant; ++i)
        ds.push(malignant_row(rng), evasion::Label::Malicious);
    ds = evasion::shuffle(ds, rng.next_u64());

    evasion::save_csv(ds, out);
    std::cout << "wrote " << ds.size() << " rows (" << ds.count(evasion::Label::Legitimate)
              << " legitimate, " << ds.count(evasion::Label::Malicious)
              << " malicious) to " << out << "\n";
    return 0;
}
