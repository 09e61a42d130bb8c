#include "evasion/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "evasion/errors.hpp"
#include "evasion/oracle.hpp"
#include "evasion/rng.hpp"

namespace evasion {

std::string to_string(AttackMethod m) { return m == AttackMethod::AP ? "ap" : "re"; }

AttackMethod method_from(std::string_view name) {
    if (name == "ap" || name == "AP")
        return AttackMethod::AP;
    if (name == "re" || name == "RE")
        return AttackMethod::RE;
    throw ConfigError("unknown attack method: " + std::string(name));
}

std::string to_string(SweepParameter p) {
    return p == SweepParameter::RExploit ? "r-exploit" : "b-explore";
}

SweepParameter sweep_parameter_from(std::string_view name) {
    if (name == "r-exploit" || name == "r_exploit")
        return SweepParameter::RExploit;
    if (name == "b-explore" || name == "b_explore")
        return SweepParameter::BExplore;
    throw ConfigError("unknown sweep parameter: " + std::string(name));
}

namespace {

void validate(const ExperimentConfig& cfg) {
    if (cfg.datasets.empty())
        throw ConfigError("experiment: no datasets configured");
    if (cfg.defenders.empty())
        throw ConfigError("experiment: no defenders configured");
    for (const auto& def : cfg.defenders)
        if (!is_defender_kind(def))
            throw ConfigError("unknown defender kind: " + def);
    if (cfg.methods.empty())
        throw ConfigError("experiment: no attack methods configured");
    if (cfg.runs < 1)
        throw ConfigError("experiment: runs must be at least 1");
    if (!(cfg.defender_fraction > 0.0 && cfg.defender_fraction < 1.0))
        throw ConfigError("experiment: defender_fraction must be in (0,1)");
}

// Seed pools come from the adversary split only; the defender never shows
// its training data.
std::vector<Sample> legitimate_seeds(const Dataset& pool, std::size_t want) {
    std::vector<Sample> seeds;
    for (std::size_t i = 0; i < pool.size() && seeds.size() < want; ++i)
        if (pool.labels[i] == Label::Legitimate)
            seeds.push_back(pool.samples[i]);
    if (seeds.empty())
        throw RunError("adversary pool holds no Legitimate seed samples");
    return seeds;
}

Dataset re_seed_dataset(const Dataset& pool, std::size_t per_class) {
    Dataset seed;
    seed.name = pool.name + "-seed";
    seed.d = pool.d;
    std::size_t legit = 0, malicious = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool.labels[i] == Label::Legitimate && legit < per_class) {
            seed.push(pool.samples[i], Label::Legitimate);
            ++legit;
        } else if (pool.labels[i] == Label::Malicious && malicious < per_class) {
            seed.push(pool.samples[i], Label::Malicious);
            ++malicious;
        }
    }
    if (legit == 0 || malicious == 0)
        throw RunError("adversary pool lacks a class needed to seed the attack");
    return seed;
}

RunRecord run_cell(const Dataset& full, const std::string& defender_kind,
                   AttackMethod method, int run, const ExperimentConfig& cfg) {
    const std::uint64_t cell_seed =
        derive_seed(cfg.master_seed, full.name, defender_kind, to_string(method),
                    static_cast<std::uint64_t>(run));
    Rng rng(cell_seed);

    const Dataset shuffled = shuffle(full, rng.next_u64());
    auto [train_ds, adversary_pool] =
        split(shuffled, cfg.defender_fraction, rng.next_u64());

    const ClassifierPtr defender =
        train_defender(defender_kind, train_ds, cfg.defender_params, rng.next_u64());

    RunRecord rec;
    rec.dataset = full.name;
    rec.defender = defender_kind;
    rec.method = to_string(method);
    rec.run_index = run;
    rec.rng_seed = cell_seed;

    if (method == AttackMethod::AP) {
        BlackBoxOracle oracle(defender, full.d, cfg.ap.b_explore, cfg.oracle_log);
        const auto seeds = legitimate_seeds(adversary_pool, cfg.ap_seed_count);
        const AnchorSet anchors = explore_ap(seeds, oracle, cfg.ap, rng);
        const AttackSet attacks = exploit_ap(anchors, cfg.ap, rng);
        rec.ear = ear(*defender, attacks);
        rec.anchor_yield = anchors.yield;
        rec.probes_used = oracle.used();
    } else {
        BlackBoxOracle oracle(defender, full.d, cfg.re.b_explore, cfg.oracle_log);
        const Dataset seed = re_seed_dataset(adversary_pool, cfg.re_seed_per_class);
        auto [pools, sur] = explore_re(seed, oracle, cfg.re, rng);
        sur.fidelity = surrogate_fidelity(sur, full);
        const ReAttack attack = exploit_re(pools, sur, cfg.re, rng);
        rec.ear = ear(*defender, attack.attacks);
        rec.anchor_yield =
            static_cast<double>(pools.legit.size() - pools.legit_seed_count) /
            static_cast<double>(cfg.re.b_explore);
        rec.surrogate_fidelity = sur.fidelity;
        rec.probes_used = oracle.used();
    }
    return rec;
}

} // namespace

Dataset resolve_dataset(const std::string& ref, const ExperimentConfig& cfg) {
    if (is_synthetic_kind(ref)) {
        const auto seed = derive_seed(cfg.master_seed, ref, "fixture", "gen", 0);
        return make_synthetic(synthetic_kind_from(ref), cfg.fixture_n, seed);
    }
    Dataset ds = load_csv(ref, true);
    if (cfg.max_rows > 0 && ds.size() > cfg.max_rows) {
        const auto seed = derive_seed(cfg.master_seed, ds.name, "subsample", "", 0);
        Dataset mixed = shuffle(ds, seed);
        Dataset cut;
        cut.name = mixed.name;
        cut.d = mixed.d;
        for (std::size_t i = 0; i < cfg.max_rows; ++i)
            cut.push(mixed.samples[i], mixed.labels[i]);
        return cut;
    }
    return ds;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult result;

    for (const auto& ds_ref : cfg.datasets) {
        Dataset full;
        try {
            full = resolve_dataset(ds_ref, cfg);
        } catch (const std::exception& e) {
            result.errors.push_back({ds_ref, "*", "*", -1, e.what()});
            continue;
        }

        for (const auto& defender_kind : cfg.defenders) {
            // Defender's own view of its quality, recorded once per
            // (dataset, defender) with a dedicated seed chain so the value
            // does not depend on which methods run.
            try {
                Rng cv_rng(derive_seed(cfg.master_seed, full.name, defender_kind,
                                       "cv", 0));
                const Dataset shuffled = shuffle(full, cv_rng.next_u64());
                auto [train_ds, rest] =
                    split(shuffled, cfg.defender_fraction, cv_rng.next_u64());
                const double acc = cross_val_accuracy(
                    train_ds,
                    make_trainer(defender_kind, cfg.defender_params,
                                 cv_rng.next_u64()),
                    cfg.cv_folds, cv_rng.next_u64());
                result.report.initial_accuracy.push_back(
                    {full.name, defender_kind, acc});
            } catch (const std::exception& e) {
                result.errors.push_back(
                    {full.name, defender_kind, "cv", -1, e.what()});
            }

            for (const AttackMethod method : cfg.methods) {
                for (int run = 0; run < cfg.runs; ++run) {
                    try {
                        result.report.records.push_back(
                            run_cell(full, defender_kind, method, run, cfg));
                    } catch (const std::exception& e) {
                        result.errors.push_back({full.name, defender_kind,
                                                 to_string(method), run,
                                                 e.what()});
                    }
                }
            }
        }
    }
    return result;
}

std::vector<std::pair<double, ExperimentResult>> run_sweep(const SweepSpec& spec) {
    if (spec.values.empty())
        throw ConfigError("sweep: no values given");
    for (std::size_t i = 1; i < spec.values.size(); ++i)
        if (!(spec.values[i] > spec.values[i - 1]))
            throw ConfigError("sweep: values must be strictly increasing");

    std::vector<std::pair<double, ExperimentResult>> out;
    out.reserve(spec.values.size());
    for (double v : spec.values) {
        ExperimentConfig cfg = spec.base;
        if (spec.parameter == SweepParameter::RExploit) {
            cfg.ap.r_exploit = v;
            cfg.re.r_exploit = v;
        } else {
            if (!(v >= 1.0))
                throw ConfigError("sweep: b-explore values must be at least 1");
            cfg.ap.b_explore = static_cast<std::size_t>(v);
            cfg.re.b_explore = static_cast<std::size_t>(v);
        }
        out.emplace_back(v, run_experiment(cfg));
    }
    return out;
}

// ---- config file ----------------------------------------------------------

namespace {

std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(value);
    while (std::getline(in, cur, ','))
        if (auto t = trim_ws(cur); !t.empty())
            out.push_back(t);
    return out;
}

double to_double(const std::string& key, const std::string& value) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError(key + ": cannot parse '" + value + "' as a number");
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw ConfigError(key + ": cannot parse '" + value + "' as an integer");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "off")
        return false;
    throw ConfigError(key + ": cannot parse '" + value + "' as a boolean");
}

} // namespace

void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "datasets")
        cfg.datasets = split_list(value);
    else if (key == "defenders")
        cfg.defenders = split_list(value);
    else if (key == "methods") {
        cfg.methods.clear();
        for (const auto& m : split_list(value))
            cfg.methods.push_back(method_from(m));
    } else if (key == "runs")
        cfg.runs = static_cast<int>(to_u64(key, value));
    else if (key == "master_seed")
        cfg.master_seed = to_u64(key, value);
    else if (key == "fixture_n")
        cfg.fixture_n = to_u64(key, value);
    else if (key == "max_rows")
        cfg.max_rows = to_u64(key, value);
    else if (key == "defender_fraction")
        cfg.defender_fraction = to_double(key, value);
    else if (key == "cv_folds")
        cfg.cv_folds = static_cast<int>(to_u64(key, value));
    else if (key == "oracle_log")
        cfg.oracle_log = to_bool(key, value);
    else if (key == "ap.b_explore")
        cfg.ap.b_explore = to_u64(key, value);
    else if (key == "ap.r_min")
        cfg.ap.r_min = to_double(key, value);
    else if (key == "ap.r_max")
        cfg.ap.r_max = to_double(key, value);
    else if (key == "ap.r_exploit")
        cfg.ap.r_exploit = to_double(key, value);
    else if (key == "ap.n_attack")
        cfg.ap.n_attack = to_u64(key, value);
    else if (key == "ap.seed_count")
        cfg.ap_seed_count = to_u64(key, value);
    else if (key == "re.b_explore")
        cfg.re.b_explore = to_u64(key, value);
    else if (key == "re.lambda_max")
        cfg.re.lambda_max = to_double(key, value);
    else if (key == "re.surrogate_c")
        cfg.re.surrogate_c = to_double(key, value);
    else if (key == "re.r_exploit")
        cfg.re.r_exploit = to_double(key, value);
    else if (key == "re.n_attack")
        cfg.re.n_attack = to_u64(key, value);
    else if (key == "re.local_budget")
        cfg.re.local_budget = to_u64(key, value);
    else if (key == "re.r_min")
        cfg.re.r_min = to_double(key, value);
    else if (key == "re.r_max")
        cfg.re.r_max = to_double(key, value);
    else if (key == "re.seed_per_class")
        cfg.re_seed_per_class = to_u64(key, value);
    else if (key == "defender.linear_c")
        cfg.defender_params.linear_c = to_double(key, value);
    else if (key == "defender.knn_k")
        cfg.defender_params.knn_k = static_cast<int>(to_u64(key, value));
    else if (key == "defender.tree_max_depth")
        cfg.defender_params.tree_max_depth = static_cast<int>(to_u64(key, value));
    else if (key == "defender.tree_min_leaf")
        cfg.defender_params.tree_min_leaf = static_cast<int>(to_u64(key, value));
    else if (key == "defender.forest_trees")
        cfg.defender_params.forest_trees = static_cast<int>(to_u64(key, value));
    else if (key == "defender.rbf_gamma")
        cfg.defender_params.rbf_gamma = to_double(key, value);
    else if (key == "defender.rbf_c")
        cfg.defender_params.rbf_c = to_double(key, value);
    else
        throw ConfigError("unknown config key: " + key);
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file " + path.string());

    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim_ws(line);
        if (t.empty() || t[0] == '#')
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key = value");
        apply_config_entry(cfg, trim_ws(t.substr(0, eq)), trim_ws(t.substr(eq + 1)));
    }
    return cfg;
}

} // namespace evasion
