#pragma once

#include <cstdint>
#include <vector>

#include "evasion/dataset.hpp"
#include "evasion/oracle.hpp"
#include "evasion/rng.hpp"

namespace evasion {

struct APConfig {
    std::size_t b_explore = 1000;
    double r_min = 0.1;
    double r_max = 0.5;
    double r_exploit = 0.1;
    std::size_t n_attack = 2000;
};

/// Oracle-confirmed Legitimate samples plus the seeds they grew from. Seeds
/// occupy the first seed_count slots. Duplicates are kept: they encode
/// density the exploitation draw then follows.
struct AnchorSet {
    std::vector<Sample> anchors;
    std::size_t seed_count = 0;
    double yield = 0.0; // accepted probes / b_explore
};

struct AttackSet {
    std::vector<Sample> samples;
};

/// Exploration radius for iteration i (1-based): grows from r_min toward
/// r_max with the running acceptance rate count_legitimate / i.
double radius_at(double r_min, double r_max, std::size_t count_legitimate,
                 std::size_t i);

/// Adds independent zero-mean Gaussian noise with the given standard
/// deviation to every coordinate, then clamps each back into [0,1].
Sample perturb(const Sample& x, double scale, Rng& rng);

/// Adaptive-radius neighborhood search: exactly cfg.b_explore probes, each
/// perturbing a uniformly drawn member of the current anchor set; probes the
/// oracle answers Legitimate join the set.
AnchorSet explore_ap(const std::vector<Sample>& seeds, BlackBoxOracle& oracle,
                     const APConfig& cfg, Rng& rng);

/// lambda*a + (1-lambda)*b, coordinate-wise.
Sample convex_blend(const Sample& a, const Sample& b, double lambda);

/// One attack sample: two random anchors, both perturbed with r_exploit,
/// blended by a uniform convex combination.
Sample draw_attack_sample(const AnchorSet& anchors, double r_exploit, Rng& rng);

/// cfg.n_attack samples via draw_attack_sample. Consumes no oracle probes.
AttackSet exploit_ap(const AnchorSet& anchors, const APConfig& cfg, Rng& rng);

/// Anchor sets export as a dataspace CSV with label column 0.
Dataset anchors_to_dataset(const AnchorSet& anchors, std::string name);

} // namespace evasion
