#include "cftrain/training.hpp"

#include <cmath>
#include <string>

#include "cftrain/criteria.hpp"
#include "cftrain/errors.hpp"

namespace cftrain {

std::vector<double> grid_values(const ParamGrid& grid) {
    if (!std::isfinite(grid.min_exp) || !std::isfinite(grid.max_exp) || grid.min_exp >= grid.max_exp) {
        throw InvalidGrid("grid needs finite min_exp < max_exp");
    }
    if (grid.points == 0) {
        throw InvalidGrid("grid needs at least one point");
    }
    std::vector<double> values;
    values.reserve(grid.points);
    const double span = grid.max_exp - grid.min_exp;
    for (std::size_t r = 0; r < grid.points; ++r) {
        values.push_back(
            std::exp(grid.min_exp + span * static_cast<double>(r) / static_cast<double>(grid.points)));
    }
    return values;
}

std::string_view regime_name(Regime r) {
    switch (r) {
    case Regime::pe: return "PE";
    case Regime::pre_pe: return "pre-PE";
    case Regime::of: return "OF";
    case Regime::pre_of: return "pre-OF";
    }
    return "?";
}

KernelFamily KernelFamily::for_split(const SplitQuadruple& split) {
    split.validate();
    return KernelFamily(std::make_shared<const DistanceMatrix>(*split.test.pool()));
}

double training_objective(Regime regime, const SplitQuadruple& split, const ConformityMeasure& q) {
    switch (regime) {
    case Regime::pe: return prediction_error(split.pre_train(), split.pre_test, q).value;
    case Regime::pre_pe: return prediction_error(split.pre_pre_train, split.pre_pre_test, q).value;
    case Regime::of: return observed_fuzziness_loo(split.pre_train(), split.pre_test, q).value;
    case Regime::pre_of: return observed_fuzziness_loo(split.pre_pre_train, split.pre_pre_test, q).value;
    }
    throw InvalidParameter("unknown regime");
}

double test_objective(Regime regime, const SplitQuadruple& split, const ConformityMeasure& q) {
    switch (regime) {
    case Regime::pe:
    case Regime::pre_pe: return prediction_error(split.train(), split.test, q).value;
    case Regime::of:
    case Regime::pre_of: return observed_fuzziness(split.pre_train(), split.pre_test, split.test, q).value;
    }
    throw InvalidParameter("unknown regime");
}

TrainedModel train(Regime regime, const SplitQuadruple& split, const ParamGrid& grid, const KernelFamily& family) {
    split.validate();
    TrainedModel model{regime, 0.0, 0, {}};
    for (double rho : grid_values(grid)) {
        model.objective_curve.push_back({rho, training_objective(regime, split, family.at(rho))});
    }
    for (std::size_t i = 1; i < model.objective_curve.size(); ++i) {
        if (model.objective_curve[i].value < model.objective_curve[model.best_index].value) {
            model.best_index = i;
        }
    }
    model.rho_star = model.objective_curve[model.best_index].rho;
    return model;
}

TrainedModels train_all(const SplitQuadruple& split, const ParamGrid& grid, const KernelFamily& family) {
    return {train(Regime::pe, split, grid, family), train(Regime::pre_pe, split, grid, family),
            train(Regime::of, split, grid, family), train(Regime::pre_of, split, grid, family)};
}

ScoreReport evaluate(const TrainedModels& models, const SplitQuadruple& split, const KernelFamily& family) {
    split.validate();
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (models[i].regime != kRegimes[i]) {
            throw InvalidParameter("evaluate expects models ordered PE, pre-PE, OF, pre-OF; slot " +
                                   std::to_string(i) + " holds " + std::string(regime_name(models[i].regime)));
        }
    }
    const Dataset train_set = split.train();
    const Dataset pre_train = split.pre_train();
    const auto rho = [&](Regime r) { return models[regime_index(r)].rho_star; };

    const auto pe_pe = prediction_error(train_set, split.test, family.at(rho(Regime::pe)));
    const auto pe_of = prediction_error(train_set, split.test, family.at(rho(Regime::of)));
    const auto of_pe = observed_fuzziness(pre_train, split.pre_test, split.test, family.at(rho(Regime::pre_pe)));
    const auto of_of = observed_fuzziness(pre_train, split.pre_test, split.test, family.at(rho(Regime::pre_of)));

    ScoreReport report{};
    report.pe_test_pe_train = pe_pe.value;
    report.pe_test_of_train = pe_of.value;
    report.of_test_pe_train = of_pe.value;
    report.of_test_of_train = of_of.value;
    for (Regime r : kRegimes) {
        report.rho_star[regime_index(r)] = rho(r);
    }
    report.ties = pe_pe.ties + pe_of.ties;
    return report;
}

} // namespace cftrain
