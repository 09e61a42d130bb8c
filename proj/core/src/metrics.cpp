#include "evasion/metrics.hpp"

#include <cmath>

#include "evasion/errors.hpp"

namespace evasion {

double ear(const TrainedClassifier& defender, const AttackSet& attacks) {
    if (attacks.samples.empty())
        throw ContractError("ear: empty attack set");
    std::size_t legitimate = 0;
    for (const auto& x : attacks.samples)
        legitimate += defender.predict(x) == Label::Legitimate;
    return static_cast<double>(legitimate) /
           static_cast<double>(attacks.samples.size());
}

std::vector<AggregateRow> aggregate_rows(const std::vector<RunRecord>& records) {
    struct Group {
        AggregateRow row;
        std::vector<double> ears;
        double yield_sum = 0.0;
        double fidelity_sum = 0.0;
        std::size_t fidelity_count = 0;
    };
    std::vector<Group> groups; // first-appearance order

    for (const auto& rec : records) {
        Group* g = nullptr;
        for (auto& cand : groups) {
            if (cand.row.dataset == rec.dataset &&
                cand.row.defender == rec.defender &&
                cand.row.method == rec.method) {
                g = &cand;
                break;
            }
        }
        if (!g) {
            groups.emplace_back();
            g = &groups.back();
            g->row.dataset = rec.dataset;
            g->row.defender = rec.defender;
            g->row.method = rec.method;
        }
        g->ears.push_back(rec.ear);
        g->yield_sum += rec.anchor_yield;
        if (rec.surrogate_fidelity) {
            g->fidelity_sum += *rec.surrogate_fidelity;
            ++g->fidelity_count;
        }
    }

    std::vector<AggregateRow> out;
    out.reserve(groups.size());
    for (auto& g : groups) {
        const std::size_t n = g.ears.size();
        double mean = 0.0;
        for (double e : g.ears)
            mean += e;
        mean /= static_cast<double>(n);

        double std_dev = 0.0; // single record: 0 by convention
        if (n > 1) {
            double ss = 0.0;
            for (double e : g.ears)
                ss += (e - mean) * (e - mean);
            std_dev = std::sqrt(ss / static_cast<double>(n - 1));
        }

        g.row.runs = n;
        g.row.ear_mean = mean;
        g.row.ear_std = std_dev;
        g.row.anchor_yield_mean = g.yield_sum / static_cast<double>(n);
        if (g.fidelity_count > 0)
            g.row.fidelity_mean =
                g.fidelity_sum / static_cast<double>(g.fidelity_count);
        out.push_back(std::move(g.row));
    }
    return out;
}

std::vector<AggregateRow> AttackReport::aggregates() const {
    return aggregate_rows(records);
}

AttackReport aggregate(std::vector<RunRecord> records) {
    AttackReport report;
    report.records = std::move(records);
    return report;
}

} // namespace evasion
