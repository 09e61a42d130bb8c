#include "evasion/attack_ap.hpp"

#include <algorithm>
#include <utility>

#include "evasion/errors.hpp"

namespace evasion {

namespace {

void check_config(const APConfig& cfg) {
    if (!(cfg.r_min >= 0.0 && cfg.r_min <= cfg.r_max))
        throw ContractError("APConfig: need 0 <= r_min <= r_max");
    if (cfg.b_explore < 1)
        throw ContractError("APConfig: b_explore must be at least 1");
    if (cfg.r_exploit < 0.0)
        throw ContractError("APConfig: r_exploit must be non-negative");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

} // namespace

double radius_at(double r_min, double r_max, std::size_t count_legitimate,
                 std::size_t i) {
    if (i == 0)
        throw ContractError("radius_at: iteration index is 1-based");
    if (count_legitimate > i)
        throw ContractError("radius_at: count_legitimate exceeds iterations");
    if (!(r_min >= 0.0 && r_min <= r_max))
        throw ContractError("radius_at: need 0 <= r_min <= r_max");
    const double rate =
        static_cast<double>(count_legitimate) / static_cast<double>(i);
    return (r_max - r_min) * rate + r_min;
}

Sample perturb(const Sample& x, double scale, Rng& rng) {
    if (scale < 0.0)
        throw ContractError("perturb: scale must be non-negative");
    Sample out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = clamp01(x[j] + rng.normal(0.0, scale));
    return out;
}

AnchorSet explore_ap(const std::vector<Sample>& seeds, BlackBoxOracle& oracle,
                     const APConfig& cfg, Rng& rng) {
    if (seeds.empty())
        throw ContractError("explore_ap: seed set is empty");
    check_config(cfg);

    oracle.set_phase("explore");
    AnchorSet out;
    out.anchors = seeds;
    out.seed_count = seeds.size();

    std::size_t count_legitimate = 0;
    for (std::size_t i = 1; i <= cfg.b_explore; ++i) {
        const std::size_t pick = rng.uniform_index(out.anchors.size());
        const double radius = radius_at(cfg.r_min, cfg.r_max, count_legitimate, i);
        Sample candidate = perturb(out.anchors[pick], radius, rng);
        if (oracle.probe(candidate) == Label::Legitimate) {
            out.anchors.push_back(std::move(candidate));
            ++count_legitimate;
        }
    }
    out.yield = static_cast<double>(count_legitimate) /
                static_cast<double>(cfg.b_explore);
    return out;
}

Sample convex_blend(const Sample& a, const Sample& b, double lambda) {
    Sample out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = lambda * a[j] + (1.0 - lambda) * b[j];
    return out;
}

Sample draw_attack_sample(const AnchorSet& anchors, double r_exploit, Rng& rng) {
    const auto& pool = anchors.anchors;
    const Sample& a = pool[rng.uniform_index(pool.size())];
    const Sample& b = pool[rng.uniform_index(pool.size())];
    const Sample pa = perturb(a, r_exploit, rng);
    const Sample pb = perturb(b, r_exploit, rng);
    return convex_blend(pa, pb, rng.uniform());
}

AttackSet exploit_ap(const AnchorSet& anchors, const APConfig& cfg, Rng& rng) {
    if (anchors.anchors.empty())
        throw AttackInfeasible("exploit_ap: empty anchor set");
    if (cfg.r_exploit < 0.0)
        throw ContractError("exploit_ap: r_exploit must be non-negative");

    AttackSet out;
    out.samples.reserve(cfg.n_attack);
    for (std::size_t i = 0; i < cfg.n_attack; ++i)
        out.samples.push_back(draw_attack_sample(anchors, cfg.r_exploit, rng));
    return out;
}

Dataset anchors_to_dataset(const AnchorSet& anchors, std::string name) {
    Dataset ds;
    ds.name = std::move(name);
    ds.d = anchors.anchors.empty() ? 0 : anchors.anchors.front().size();
    for (const auto& a : anchors.anchors)
        ds.push(a, Label::Legitimate);
    return ds;
}

} // namespace evasion
