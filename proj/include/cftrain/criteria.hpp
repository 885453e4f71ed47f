#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "cftrain/conformity.hpp"
#include "cftrain/core.hpp"

namespace cftrain {

/// Conformal p-value rank / (1 + m), where rank counts the calibration scores
/// not exceeding the candidate's score plus one, and m is the calibration size.
class PValue {
public:
    PValue(std::size_t rank, std::size_t calibration_size);

    std::size_t rank() const { return rank_; }
    std::size_t calibration_size() const { return calibration_size_; }
    double value() const { return static_cast<double>(rank_) / static_cast<double>(calibration_size_ + 1); }

private:
    std::size_t rank_;
    std::size_t calibration_size_;
};

enum class Criterion { observed_fuzziness, prediction_error };

std::string_view criterion_name(Criterion c);

struct CriterionScore {
    Criterion kind;
    double value;
    // Evaluation points whose point prediction was an exact argmax tie (PE only).
    std::size_t ties = 0;
};

/// Split-conformal scorer for a fixed (proper training set, calibration set, measure).
///
/// The calibration scores Q(z, d_train), z in d_cal, are computed once at
/// construction and reused for every candidate.
class CalibratedScorer {
public:
    // Throws EmptyDataset if either dataset is empty.
    CalibratedScorer(const Dataset& d_train, const Dataset& d_cal, const ConformityMeasure& q);

    PValue p_value(ObjectId x, Label y) const;

    // p-value against the calibration set with its entry at `position` removed.
    PValue p_value_without(ObjectId x, Label y, std::size_t position) const;

    std::size_t calibration_size() const { return calibration_scores_.size(); }
    double calibration_score(std::size_t position) const { return calibration_scores_[position]; }

private:
    std::size_t count_not_above(double s) const;

    const Dataset& d_train_;
    const ConformityMeasure& q_;
    std::vector<double> calibration_scores_;
    std::vector<double> sorted_scores_;
};

PValue p_value(ObjectId x, Label y, const Dataset& d_train, const Dataset& d_cal, const ConformityMeasure& q);

struct PointPrediction {
    Label label;
    bool tie;
};

// argmax_y Q((x, y), d); exact ties resolve to label 0 and set `tie`.
PointPrediction point_predict(ObjectId x, const Dataset& d, const ConformityMeasure& q);

/// Mean over d_eval of the summed p-values of the false labels, with d as the
/// proper training set and d_cal as the calibration set.
CriterionScore observed_fuzziness(const Dataset& d, const Dataset& d_cal, const Dataset& d_eval,
                                  const ConformityMeasure& q);

/// Leave-one-out variant: each calibration observation is evaluated against
/// the calibration set with one copy of itself removed. Needs |d_cal| >= 2.
CriterionScore observed_fuzziness_loo(const Dataset& d, const Dataset& d_cal, const ConformityMeasure& q);

// Fraction of d_eval misclassified by point_predict with reference d.
CriterionScore prediction_error(const Dataset& d, const Dataset& d_eval, const ConformityMeasure& q);

} // namespace cftrain
