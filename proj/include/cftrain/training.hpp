#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "cftrain/conformity.hpp"
#include "cftrain/core.hpp"

namespace cftrain {

/// Exponential grid rho_r = exp(min_exp + (max_exp - min_exp) r / points),
/// r = 0, ..., points - 1. The largest value stays below exp(max_exp).
struct ParamGrid {
    double min_exp = -5.0;
    double max_exp = 10.0;
    std::size_t points = 10;
};

// Throws InvalidGrid when min_exp >= max_exp, points == 0 or a bound is not finite.
std::vector<double> grid_values(const ParamGrid& grid);

enum class Regime { pe = 0, pre_pe = 1, of = 2, pre_of = 3 };

inline constexpr std::array<Regime, 4> kRegimes{Regime::pe, Regime::pre_pe, Regime::of, Regime::pre_of};

constexpr std::size_t regime_index(Regime r) { return static_cast<std::size_t>(r); }

// "PE", "pre-PE", "OF", "pre-OF".
std::string_view regime_name(Regime r);

struct CurvePoint {
    double rho;
    double value;
};

struct TrainedModel {
    Regime regime;
    double rho_star;
    std::size_t best_index;
    std::vector<CurvePoint> objective_curve;
};

/// Produces Q_rho for any rho, sharing one distance cache across the grid.
class KernelFamily {
public:
    explicit KernelFamily(std::shared_ptr<const DistanceMatrix> distances = nullptr)
        : distances_(std::move(distances)) {}

    // Distance cache over the split's pool.
    static KernelFamily for_split(const SplitQuadruple& split);

    KernelConformity at(double rho) const { return KernelConformity(rho, distances_); }

private:
    std::shared_ptr<const DistanceMatrix> distances_;
};

// Objective minimized when training `regime`:
//   PE     : PE(pre_train, pre_test)          pre-PE : PE(pre_pre_train, pre_pre_test)
//   OF     : OF_loo(pre_train, pre_test)      pre-OF : OF_loo(pre_pre_train, pre_pre_test)
double training_objective(Regime regime, const SplitQuadruple& split, const ConformityMeasure& q);

// Regime-matched test score, used for the test-phase curves:
//   PE, pre-PE  : PE(train, test)
//   OF, pre-OF  : OF(pre_train, pre_test, test)
double test_objective(Regime regime, const SplitQuadruple& split, const ConformityMeasure& q);

/// Exhaustive grid search; exact objective ties go to the smallest rho.
TrainedModel train(Regime regime, const SplitQuadruple& split, const ParamGrid& grid, const KernelFamily& family);

struct ScoreReport {
    double pe_test_pe_train;
    double pe_test_of_train;
    double of_test_pe_train;
    double of_test_of_train;
    // rho_star of each model, indexed by regime_index.
    std::array<double, 4> rho_star;
    // Point predictions on the test set that hit an exact argmax tie.
    std::size_t ties;
};

using TrainedModels = std::array<TrainedModel, 4>;

TrainedModels train_all(const SplitQuadruple& split, const ParamGrid& grid, const KernelFamily& family);

// models[i] must be the model of kRegimes[i]; throws InvalidParameter otherwise.
ScoreReport evaluate(const TrainedModels& models, const SplitQuadruple& split, const KernelFamily& family);

} // namespace cftrain
