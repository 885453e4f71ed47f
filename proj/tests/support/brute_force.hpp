#pragma once

// Literal evaluation of the conformal definitions, used as an oracle.
//
// Nothing here reuses the library's criteria or training code: every p-value
// re-scores every calibration observation, leave-one-out sets are rebuilt by
// copying, the step function is applied to the score difference, and means
// are plain floating-point averages. Only the ConformityMeasure is shared.

#include <cmath>
#include <cstring>
#include <vector>

#include "cftrain/conformity.hpp"
#include "cftrain/core.hpp"
#include "cftrain/training.hpp"

namespace cftrain::oracle {

inline double theta(double u) { return u >= 0.0 ? 1.0 : 0.0; }

inline double delta(Label a, Label b) { return a == b ? 1.0 : 0.0; }

// C(x, y, D, D', Q)
inline double naive_p_value(ObjectId x, Label y, const Dataset& d, const std::vector<Observation>& d_prime,
                      const ConformityMeasure& q) {
    const double test_score = q.score({x, y}, d);
    double sum = 0.0;
    for (const auto& z : d_prime) {
        sum += theta(test_score - q.score(z, d));
    }
    return (1.0 + sum) / (1.0 + static_cast<double>(d_prime.size()));
}

inline std::vector<Observation> as_vector(const Dataset& d) { return {d.items().begin(), d.items().end()}; }

// D' \ {z}: drop the first bitwise-equal copy.
inline std::vector<Observation> remove_one(const Dataset& d, const Observation& z) {
    std::vector<Observation> out;
    bool removed = false;
    for (const auto& item : d.items()) {
        const auto a = d.object(item).components();
        const auto b = d.object(z).components();
        const bool equal = item.label == z.label && a.size() == b.size() &&
                           std::memcmp(a.data(), b.data(), a.size_bytes()) == 0;
        if (equal && !removed) {
            removed = true;
            continue;
        }
        out.push_back(item);
    }
    return out;
}

// OF(D, D', D'', Q)
inline double naive_observed_fuzziness(const Dataset& d, const Dataset& d_prime, const Dataset& d_eval,
                                  const ConformityMeasure& q) {
    const auto cal = as_vector(d_prime);
    double sum = 0.0;
    for (const auto& z : d_eval.items()) {
        for (Label y : kLabels) {
            sum += (1.0 - delta(z.label, y)) * naive_p_value(z.object, y, d, cal, q);
        }
    }
    return sum / static_cast<double>(d_eval.size());
}

// OF(D, D', Q)
inline double naive_observed_fuzziness_loo(const Dataset& d, const Dataset& d_prime, const ConformityMeasure& q) {
    double sum = 0.0;
    for (const auto& z : d_prime.items()) {
        const auto cal = remove_one(d_prime, z);
        for (Label y : kLabels) {
            sum += (1.0 - delta(z.label, y)) * naive_p_value(z.object, y, d, cal, q);
        }
    }
    return sum / static_cast<double>(d_prime.size());
}

inline Label naive_point_predict(ObjectId x, const Dataset& d, const ConformityMeasure& q) {
    const double s0 = q.score({x, Label::zero}, d);
    const double s1 = q.score({x, Label::one}, d);
    return s1 > s0 ? Label::one : Label::zero;
}

// PE(D, D', Q)
inline double naive_prediction_error(const Dataset& d, const Dataset& d_eval, const ConformityMeasure& q) {
    double sum = 0.0;
    for (const auto& z : d_eval.items()) {
        sum += 1.0 - delta(z.label, naive_point_predict(z.object, d, q));
    }
    return sum / static_cast<double>(d_eval.size());
}

inline std::vector<double> grid(const ParamGrid& g) {
    std::vector<double> out;
    for (std::size_t r = 0; r < g.points; ++r) {
        out.push_back(std::exp(g.min_exp + (g.max_exp - g.min_exp) * static_cast<double>(r) /
                                               static_cast<double>(g.points)));
    }
    return out;
}

inline Dataset sum(const Dataset& a, const Dataset& b) {
    auto items = as_vector(a);
    items.insert(items.end(), b.items().begin(), b.items().end());
    return Dataset(a.pool(), std::move(items));
}

inline double objective(Regime regime, const SplitQuadruple& s, double rho) {
    const KernelConformity q(rho);
    const Dataset pre_train = sum(s.pre_pre_train, s.pre_pre_test);
    switch (regime) {
    case Regime::pe: return naive_prediction_error(pre_train, s.pre_test, q);
    case Regime::pre_pe: return naive_prediction_error(s.pre_pre_train, s.pre_pre_test, q);
    case Regime::of: return naive_observed_fuzziness_loo(pre_train, s.pre_test, q);
    case Regime::pre_of: return naive_observed_fuzziness_loo(s.pre_pre_train, s.pre_pre_test, q);
    }
    return NAN;
}

// Grid index of the minimum. Distinct criterion values differ by at least
// 1/((1+m) n) >> 1e-12, so values within 1e-12 are the same rational number
// summed in a different order; the first of them wins.
inline std::size_t argmin_index(Regime regime, const SplitQuadruple& s, const ParamGrid& g) {
    const auto rhos = grid(g);
    std::size_t best = 0;
    double best_value = objective(regime, s, rhos[0]);
    for (std::size_t i = 1; i < rhos.size(); ++i) {
        const double v = objective(regime, s, rhos[i]);
        if (v < best_value - 1e-12) {
            best = i;
            best_value = v;
        }
    }
    return best;
}

struct Scores {
    double pe_test_pe_train;
    double pe_test_of_train;
    double of_test_pe_train;
    double of_test_of_train;
};

inline Scores end_to_end(const SplitQuadruple& s, const ParamGrid& g) {
    const auto rhos = grid(g);
    const auto rho = [&](Regime r) { return rhos[argmin_index(r, s, g)]; };
    const Dataset pre_train = sum(s.pre_pre_train, s.pre_pre_test);
    const Dataset train = sum(pre_train, s.pre_test);
    return {naive_prediction_error(train, s.test, KernelConformity(rho(Regime::pe))),
            naive_prediction_error(train, s.test, KernelConformity(rho(Regime::of))),
            naive_observed_fuzziness(pre_train, s.pre_test, s.test, KernelConformity(rho(Regime::pre_pe))),
            naive_observed_fuzziness(pre_train, s.pre_test, s.test, KernelConformity(rho(Regime::pre_of)))};
}

// Unstabilized kernel share, straight from the definition.
inline double direct_kernel_score(double rho, const Observation& z, const Dataset& reference) {
    double numerator = 0.0;
    double denominator = 0.0;
    for (const auto& item : reference.items()) {
        const auto a = reference.object(z).components();
        const auto b = reference.object(item).components();
        double d2 = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            d2 += (a[i] - b[i]) * (a[i] - b[i]);
        }
        const double k = std::exp(-rho * d2);
        numerator += delta(z.label, item.label) * k;
        denominator += k;
    }
    return numerator / denominator;
}

} // namespace cftrain::oracle
