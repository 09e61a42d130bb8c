#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "evasion/classifiers.hpp"
#include "evasion/errors.hpp"

namespace evasion {

namespace {

double sq_dist(const Sample& a, const Sample& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

class RbfModel final : public TrainedClassifier {
public:
    RbfModel(std::vector<Sample> sv, std::vector<double> coef, double gamma,
             double bias, double c)
        : sv_(std::move(sv)), coef_(std::move(coef)), gamma_(gamma), bias_(bias),
          c_(c) {}

    double decision_value(const Sample& x) const {
        double s = bias_;
        for (std::size_t i = 0; i < sv_.size(); ++i)
            s += coef_[i] * std::exp(-gamma_ * sq_dist(sv_[i], x));
        return s;
    }

    Label predict(const Sample& x) const override {
        return decision_value(x) > 0.0 ? Label::Malicious : Label::Legitimate;
    }

    std::string describe() const override {
        std::ostringstream os;
        os << "rbf(gamma=" << gamma_ << ",c=" << c_ << ",sv=" << sv_.size() << ")";
        return os.str();
    }

private:
    std::vector<Sample> sv_;
    std::vector<double> coef_;
    double gamma_;
    double bias_;
    double c_;
};

} // namespace

// SMO over the full Gram matrix with maximal-violating-pair working set
// selection. Ties in the selection scan resolve to the lowest index, so the
// solve is deterministic.
ClassifierPtr train_rbf(const Dataset& ds, double gamma, double c) {
    if (ds.size() == 0)
        throw TrainingError("train_rbf: empty dataset");
    if (!ds.has_both_classes())
        throw TrainingError("train_rbf: dataset must contain both classes");
    if (!(gamma > 0.0) || !(c > 0.0))
        throw ConfigError("train_rbf: gamma and c must be positive");
    const std::size_t n = ds.size();
    if (n > 4000)
        throw ContractError("train_rbf: dataset too large for a dense kernel matrix");

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = ds.labels[i] == Label::Malicious ? 1.0 : -1.0;

    std::vector<double> K(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        K[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double k = std::exp(-gamma * sq_dist(ds.samples[i], ds.samples[j]));
            K[i * n + j] = k;
            K[j * n + i] = k;
        }
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of the dual objective

    constexpr double eps = 1e-3;
    const std::size_t max_iter = std::max<std::size_t>(50000, 50 * n);

    double m_up = 0.0, m_low = 0.0; // violation bounds from the last scan
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::ptrdiff_t i = -1, j = -1;
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            const bool in_up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
            const bool in_low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
            if (in_up && v > m_up) {
                m_up = v;
                i = static_cast<std::ptrdiff_t>(t);
            }
            if (in_low && v < m_low) {
                m_low = v;
                j = static_cast<std::ptrdiff_t>(t);
            }
        }
        if (i < 0 || j < 0 || m_up - m_low < eps)
            break;

        const auto ui = static_cast<std::size_t>(i);
        const auto uj = static_cast<std::size_t>(j);
        double quad = K[ui * n + ui] + K[uj * n + uj] - 2.0 * K[ui * n + uj];
        quad = std::max(quad, 1e-12);
        double step = (y[uj] * grad[uj] - y[ui] * grad[ui]) / quad;

        // Box constraints on alpha_i + y_i*step and alpha_j - y_j*step.
        double hi = std::numeric_limits<double>::infinity();
        double lo = -std::numeric_limits<double>::infinity();
        if (y[ui] > 0) {
            hi = std::min(hi, c - alpha[ui]);
            lo = std::max(lo, -alpha[ui]);
        } else {
            hi = std::min(hi, alpha[ui]);
            lo = std::max(lo, alpha[ui] - c);
        }
        if (y[uj] > 0) {
            hi = std::min(hi, alpha[uj]);
            lo = std::max(lo, alpha[uj] - c);
        } else {
            hi = std::min(hi, c - alpha[uj]);
            lo = std::max(lo, -alpha[uj]);
        }
        step = std::clamp(step, lo, hi);
        if (step == 0.0)
            break;

        alpha[ui] += y[ui] * step;
        alpha[uj] -= y[uj] * step;
        for (std::size_t t = 0; t < n; ++t)
            grad[t] += y[t] * step * (K[t * n + ui] - K[t * n + uj]);
    }

    // Bias from free support vectors, else the midpoint of the KKT bounds.
    double bias = 0.0;
    std::size_t free_sv = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 1e-12 && alpha[t] < c - 1e-12) {
            bias += -y[t] * grad[t];
            ++free_sv;
        }
    }
    bias = free_sv > 0 ? bias / static_cast<double>(free_sv) : (m_up + m_low) / 2.0;

    std::vector<Sample> sv;
    std::vector<double> coef;
    for (std::size_t t = 0; t < n; ++t) {
        if (alpha[t] > 1e-12) {
            sv.push_back(ds.samples[t]);
            coef.push_back(alpha[t] * y[t]);
        }
    }
    return std::make_shared<RbfModel>(std::move(sv), std::move(coef), gamma, bias, c);
}

} // namespace evasion
