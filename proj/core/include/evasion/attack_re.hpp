#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evasion/attack_ap.hpp"
#include "evasion/classifiers.hpp"
#include "evasion/dataset.hpp"
#include "evasion/oracle.hpp"
#include "evasion/rng.hpp"

namespace evasion {

struct REConfig {
    std::size_t b_explore = 1000;
    double lambda_max = 0.25; // magnitude-of-dispersion bound
    double surrogate_c = 10.0;
    double r_exploit = 0.5;
    std::size_t n_attack = 2000;
    /// Probe cap for the anchor search against the surrogate.
    std::size_t local_budget = 5000;
    /// Radii reused by that surrogate-side anchor search.
    double r_min = 0.1;
    double r_max = 0.5;
};

/// Probe outcomes bucketed by oracle verdict, seeds included. Seeds occupy
/// the first *_seed_count slots of their pool.
struct ExplorationPools {
    std::vector<Sample> legit;
    std::vector<Sample> malicious;
    std::size_t legit_seed_count = 0;
    std::size_t malicious_seed_count = 0;
};

/// The adversary's linear stand-in for the defender. fidelity is filled in
/// once the surrogate has been scored against a reference dataset.
struct SurrogateModel {
    LinearModel linear;
    std::optional<double> fidelity;
};

struct GsProbe {
    Sample point;     // clamped to [0,1]^d
    Sample unclamped; // pre-clamp value the geometry invariants hold on
};

/// Deterministic core of the probe construction: orthogonalizes raw against
/// x_l - x_m, rescales to magnitude lambda and offsets from the pair
/// midpoint. Returns nothing when raw is (numerically) parallel to the pair
/// axis and no orthogonal component survives.
std::optional<GsProbe> gs_probe_from(const Sample& x_l, const Sample& x_m,
                                     const Sample& raw, double lambda);

/// Draws raw ~ N(0,I) and lambda ~ U[0, lambda_max]; re-draws a degenerate
/// raw up to 16 times before giving up with ContractError.
GsProbe gs_probe_point(const Sample& x_l, const Sample& x_m, double lambda_max,
                       Rng& rng);

/// Boundary-hugging exploration: b_explore probes placed on the
/// mid-perpendicular of random cross-class pool pairs, each probe joining
/// the pool its oracle verdict names; then trains the linear surrogate on
/// the combined pools with penalty cfg.surrogate_c.
std::pair<ExplorationPools, SurrogateModel>
explore_re(const Dataset& seed, BlackBoxOracle& oracle, const REConfig& cfg,
           Rng& rng);

/// Fraction of reference points whose surrogate label matches the reference
/// label.
double surrogate_fidelity(const SurrogateModel& sur, const Dataset& reference);

struct ReAttack {
    AttackSet attacks;
    /// Samples emitted after exhausting their validation attempts.
    std::size_t unvalidated = 0;
    /// Probes spent against the surrogate during anchor search.
    std::size_t surrogate_probes = 0;
};

/// Exploitation entirely against the surrogate: anchor search over a free
/// oracle wrapping it (cfg.local_budget probes), then attack generation with
/// rejection validation -- candidates the surrogate calls Malicious are
/// regenerated up to 100 times before being emitted unvalidated. The real
/// oracle is never touched.
ReAttack exploit_re(const ExplorationPools& pools, const SurrogateModel& sur,
                    const REConfig& cfg, Rng& rng);

/// Pools export as a dataspace CSV with the stored labels.
Dataset pools_to_dataset(const ExplorationPools& pools, std::string name);

} // namespace evasion
