#include "cftrain/criteria.hpp"

#include <algorithm>
#include <string>

#include "cftrain/errors.hpp"

namespace cftrain {

namespace {

void require_nonempty(const Dataset& d, const char* what) {
    if (d.empty()) {
        throw EmptyDataset(std::string(what) + " dataset is empty");
    }
}

// Every p-value in one OF evaluation shares the denominator 1 + m, so the
// mean is formed from the integer rank total and is order-independent.
double mean_p_value(std::size_t total_rank, std::size_t calibration_size, std::size_t eval_size) {
    return static_cast<double>(total_rank) /
           (static_cast<double>(calibration_size + 1) * static_cast<double>(eval_size));
}

} // namespace

PValue::PValue(std::size_t rank, std::size_t calibration_size) : rank_(rank), calibration_size_(calibration_size) {
    if (rank < 1 || rank > calibration_size + 1) {
        throw InvalidParameter("p-value rank " + std::to_string(rank) + " outside [1, " +
                               std::to_string(calibration_size + 1) + "]");
    }
}

std::string_view criterion_name(Criterion c) {
    return c == Criterion::observed_fuzziness ? "OF" : "PE";
}

CalibratedScorer::CalibratedScorer(const Dataset& d_train, const Dataset& d_cal, const ConformityMeasure& q)
    : d_train_(d_train), q_(q) {
    require_nonempty(d_train, "proper training");
    require_nonempty(d_cal, "calibration");
    calibration_scores_.reserve(d_cal.size());
    for (const auto& z : d_cal.items()) {
        calibration_scores_.push_back(q.score(z, d_train));
    }
    sorted_scores_ = calibration_scores_;
    std::sort(sorted_scores_.begin(), sorted_scores_.end());
}

std::size_t CalibratedScorer::count_not_above(double s) const {
    return static_cast<std::size_t>(std::upper_bound(sorted_scores_.begin(), sorted_scores_.end(), s) -
                                    sorted_scores_.begin());
}

PValue CalibratedScorer::p_value(ObjectId x, Label y) const {
    const double s = q_.score(Observation{x, y}, d_train_);
    return PValue(1 + count_not_above(s), calibration_scores_.size());
}

PValue CalibratedScorer::p_value_without(ObjectId x, Label y, std::size_t position) const {
    if (calibration_scores_.size() < 2) {
        throw CalibrationTooSmall("leave-one-out needs at least two calibration observations");
    }
    const double s = q_.score(Observation{x, y}, d_train_);
    std::size_t count = count_not_above(s);
    if (calibration_scores_[position] <= s) {
        --count;
    }
    return PValue(1 + count, calibration_scores_.size() - 1);
}

PValue p_value(ObjectId x, Label y, const Dataset& d_train, const Dataset& d_cal, const ConformityMeasure& q) {
    return CalibratedScorer(d_train, d_cal, q).p_value(x, y);
}

PointPrediction point_predict(ObjectId x, const Dataset& d, const ConformityMeasure& q) {
    require_nonempty(d, "reference");
    PointPrediction best{kLabels[0], false};
    double best_score = q.score(Observation{x, kLabels[0]}, d);
    for (std::size_t i = 1; i < kLabels.size(); ++i) {
        const double s = q.score(Observation{x, kLabels[i]}, d);
        if (s > best_score) {
            best = {kLabels[i], false};
            best_score = s;
        } else if (s == best_score) {
            best.tie = true;
        }
    }
    return best;
}

CriterionScore observed_fuzziness(const Dataset& d, const Dataset& d_cal, const Dataset& d_eval,
                                  const ConformityMeasure& q) {
    require_nonempty(d_eval, "evaluation");
    const CalibratedScorer scorer(d, d_cal, q);
    std::size_t total_rank = 0;
    for (const auto& z : d_eval.items()) {
        for (Label y : kLabels) {
            if (y != z.label) {
                total_rank += scorer.p_value(z.object, y).rank();
            }
        }
    }
    return {Criterion::observed_fuzziness, mean_p_value(total_rank, d_cal.size(), d_eval.size())};
}

CriterionScore observed_fuzziness_loo(const Dataset& d, const Dataset& d_cal, const ConformityMeasure& q) {
    require_nonempty(d, "proper training");
    require_nonempty(d_cal, "calibration");
    if (d_cal.size() < 2) {
        throw CalibrationTooSmall("leave-one-out observed fuzziness needs at least two calibration observations");
    }
    const CalibratedScorer scorer(d, d_cal, q);
    std::size_t total_rank = 0;
    for (std::size_t i = 0; i < d_cal.size(); ++i) {
        const auto& z = d_cal[i];
        for (Label y : kLabels) {
            if (y != z.label) {
                total_rank += scorer.p_value_without(z.object, y, i).rank();
            }
        }
    }
    return {Criterion::observed_fuzziness, mean_p_value(total_rank, d_cal.size() - 1, d_cal.size())};
}

CriterionScore prediction_error(const Dataset& d, const Dataset& d_eval, const ConformityMeasure& q) {
    require_nonempty(d, "reference");
    require_nonempty(d_eval, "evaluation");
    std::size_t errors = 0;
    std::size_t ties = 0;
    for (const auto& z : d_eval.items()) {
        const auto prediction = point_predict(z.object, d, q);
        errors += prediction.label != z.label ? 1 : 0;
        ties += prediction.tie ? 1 : 0;
    }
    return {Criterion::prediction_error, static_cast<double>(errors) / static_cast<double>(d_eval.size()), ties};
}

} // namespace cftrain
