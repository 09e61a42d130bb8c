#include "evasion/attack_re.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "evasion/errors.hpp"

namespace evasion {

namespace {

constexpr int kDirectionRetries = 16;
constexpr int kPairRetries = 16;
constexpr int kValidationAttempts = 100;
constexpr double kDegenerateNorm = 1e-12;

double dot(const Sample& a, const Sample& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        s += a[j] * b[j];
    return s;
}

} // namespace

std::optional<GsProbe> gs_probe_from(const Sample& x_l, const Sample& x_m,
                                     const Sample& raw, double lambda) {
    const std::size_t d = x_l.size();
    if (x_m.size() != d || raw.size() != d)
        throw ContractError("gs_probe_from: dimension mismatch");
    if (lambda < 0.0)
        throw ContractError("gs_probe_from: lambda must be non-negative");
    if (x_l == x_m)
        throw ContractError("gs_probe_from: pair members are identical");

    Sample axis(d);
    for (std::size_t j = 0; j < d; ++j)
        axis[j] = x_l[j] - x_m[j];

    // Project the random direction off the pair axis.
    Sample ortho = raw;
    const double coeff = dot(raw, axis) / dot(axis, axis);
    for (std::size_t j = 0; j < d; ++j)
        ortho[j] -= coeff * axis[j];

    const double norm = std::sqrt(dot(ortho, ortho));
    if (norm <= kDegenerateNorm)
        return std::nullopt;

    GsProbe probe;
    probe.unclamped.resize(d);
    probe.point.resize(d);
    const double rescale = lambda / norm;
    for (std::size_t j = 0; j < d; ++j) {
        const double mid = (x_l[j] + x_m[j]) / 2.0;
        probe.unclamped[j] = rescale * ortho[j] + mid;
        probe.point[j] = std::clamp(probe.unclamped[j], 0.0, 1.0);
    }
    return probe;
}

GsProbe gs_probe_point(const Sample& x_l, const Sample& x_m, double lambda_max,
                       Rng& rng) {
    if (!(lambda_max > 0.0))
        throw ContractError("gs_probe_point: lambda_max must be positive");

    const std::size_t d = x_l.size();
    Sample raw(d);
    for (int attempt = 0; attempt <= kDirectionRetries; ++attempt) {
        for (std::size_t j = 0; j < d; ++j)
            raw[j] = rng.normal(0.0, 1.0);
        // Lambda is drawn only once a usable direction exists, matching the
        // construction order: direction, orthogonalize, then magnitude.
        if (auto probe = gs_probe_from(x_l, x_m, raw, 0.0)) {
            const double lambda = rng.uniform(0.0, lambda_max);
            return *gs_probe_from(x_l, x_m, raw, lambda);
        }
    }
    throw ContractError(
        "gs_probe_point: no direction orthogonal to the pair axis found");
}

std::pair<ExplorationPools, SurrogateModel>
explore_re(const Dataset& seed, BlackBoxOracle& oracle, const REConfig& cfg,
           Rng& rng) {
    ExplorationPools pools;
    for (std::size_t i = 0; i < seed.size(); ++i)
        (seed.labels[i] == Label::Legitimate ? pools.legit : pools.malicious)
            .push_back(seed.samples[i]);
    if (pools.legit.empty() || pools.malicious.empty())
        throw ContractError("explore_re: seed needs at least one sample per class");
    pools.legit_seed_count = pools.legit.size();
    pools.malicious_seed_count = pools.malicious.size();

    oracle.set_phase("explore");
    for (std::size_t i = 1; i <= cfg.b_explore; ++i) {
        Sample x_l, x_m;
        bool distinct = false;
        for (int attempt = 0; attempt <= kPairRetries; ++attempt) {
            x_l = pools.legit[rng.uniform_index(pools.legit.size())];
            x_m = pools.malicious[rng.uniform_index(pools.malicious.size())];
            if (x_l != x_m) {
                distinct = true;
                break;
            }
        }
        if (!distinct)
            throw RunError("explore_re: could not draw a distinct cross-class pair");

        GsProbe probe = gs_probe_point(x_l, x_m, cfg.lambda_max, rng);
        const Label verdict = oracle.probe(probe.point);
        (verdict == Label::Legitimate ? pools.legit : pools.malicious)
            .push_back(std::move(probe.point));
    }

    Dataset pool_ds = pools_to_dataset(pools, "exploration-pools");
    SurrogateModel sur;
    sur.linear = train_linear(pool_ds, cfg.surrogate_c);
    return {std::move(pools), std::move(sur)};
}

double surrogate_fidelity(const SurrogateModel& sur, const Dataset& reference) {
    if (reference.size() == 0)
        throw ContractError("surrogate_fidelity: empty reference dataset");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < reference.size(); ++i)
        hits += sur.linear.predict(reference.samples[i]) == reference.labels[i];
    return static_cast<double>(hits) / static_cast<double>(reference.size());
}

ReAttack exploit_re(const ExplorationPools& pools, const SurrogateModel& sur,
                    const REConfig& cfg, Rng& rng) {
    if (pools.legit.empty())
        throw AttackInfeasible("exploit_re: empty legitimate pool");

    const auto surrogate = std::make_shared<LinearModel>(sur.linear);
    const std::size_t d = pools.legit.front().size();

    // Anchor search over the surrogate costs nothing against the real
    // budget; cfg.local_budget keeps it bounded anyway.
    BlackBoxOracle local = free_oracle(surrogate, d);
    APConfig ap_cfg;
    ap_cfg.b_explore = cfg.local_budget;
    ap_cfg.r_min = cfg.r_min;
    ap_cfg.r_max = cfg.r_max;
    ap_cfg.r_exploit = cfg.r_exploit;
    ap_cfg.n_attack = cfg.n_attack;
    const AnchorSet anchors = explore_ap(pools.legit, local, ap_cfg, rng);

    ReAttack out;
    out.attacks.samples.reserve(cfg.n_attack);
    for (std::size_t i = 0; i < cfg.n_attack; ++i) {
        Sample candidate;
        bool validated = false;
        for (int attempt = 0; attempt < kValidationAttempts; ++attempt) {
            candidate = draw_attack_sample(anchors, cfg.r_exploit, rng);
            if (surrogate->predict(candidate) == Label::Legitimate) {
                validated = true;
                break;
            }
        }
        if (!validated)
            ++out.unvalidated;
        out.attacks.samples.push_back(std::move(candidate));
    }
    out.surrogate_probes = local.used();
    return out;
}

Dataset pools_to_dataset(const ExplorationPools& pools, std::string name) {
    Dataset ds;
    ds.name = std::move(name);
    ds.d = pools.legit.empty()
               ? (pools.malicious.empty() ? 0 : pools.malicious.front().size())
               : pools.legit.front().size();
    for (const auto& s : pools.legit)
        ds.push(s, Label::Legitimate);
    for (const auto& s : pools.malicious)
        ds.push(s, Label::Malicious);
    return ds;
}

} // namespace evasion
