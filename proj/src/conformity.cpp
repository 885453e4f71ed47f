#include "cftrain/conformity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cftrain/errors.hpp"

namespace cftrain {

double squared_distance(const ObjectVector& a, const ObjectVector& b) {
    const auto x = a.components();
    const auto y = b.components();
    if (x.size() != y.size()) {
        throw InvalidParameter("squared_distance between vectors of different dimension");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double diff = x[i] - y[i];
        sum += diff * diff;
    }
    return std::max(sum, 0.0);
}

DistanceMatrix::DistanceMatrix(const ObjectPool& pool) : size_(pool.size()), values_(size_ * size_, 0.0) {
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = i + 1; j < size_; ++j) {
            const double d = squared_distance(pool[i], pool[j]);
            values_[i * size_ + j] = d;
            values_[j * size_ + i] = d;
        }
    }
}

DistanceMatrix::DistanceMatrix(std::size_t size, std::vector<double> values)
    : size_(size), values_(std::move(values)) {
    if (values_.size() != size_ * size_) {
        throw InvalidParameter("distance matrix needs size*size values");
    }
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) {
            const double d = values_[i * size_ + j];
            if (!std::isfinite(d) || d < 0.0 || d != values_[j * size_ + i]) {
                throw InvalidParameter("distance matrix must be finite, nonnegative and symmetric");
            }
        }
    }
}

KernelConformity::KernelConformity(double rho, std::shared_ptr<const DistanceMatrix> distances)
    : rho_(rho), distances_(std::move(distances)) {
    if (!std::isfinite(rho) || rho < 0.0) {
        throw InvalidParameter("kernel parameter rho must be finite and nonnegative, got " + std::to_string(rho));
    }
}

std::array<double, kLabelCount> KernelConformity::label_shares(ObjectId x, const Dataset& reference) const {
    if (reference.empty()) {
        throw EmptyReference("kernel conformity needs a nonempty reference dataset");
    }
    const auto items = reference.items();
    const ObjectPool& pool = *reference.pool();
    if (distances_ && distances_->size() != pool.size()) {
        throw InvalidParameter("distance cache does not match the reference pool");
    }

    std::vector<double> dist(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        dist[i] = distances_ ? (*distances_)(x, items[i].object) : squared_distance(pool[x], pool[items[i].object]);
    }
    const double d_min = *std::min_element(dist.begin(), dist.end());

    // Summing each label's weights in sorted order makes the result
    // independent of the reference's storage order.
    std::array<std::vector<double>, kLabelCount> weights;
    for (std::size_t i = 0; i < items.size(); ++i) {
        weights[label_index(items[i].label)].push_back(std::exp(-rho_ * (dist[i] - d_min)));
    }
    std::array<double, kLabelCount> numerators{};
    for (std::size_t y = 0; y < kLabelCount; ++y) {
        std::sort(weights[y].begin(), weights[y].end());
        for (double w : weights[y]) {
            numerators[y] += w;
        }
    }
    double denominator = 0.0;
    for (double n : numerators) {
        denominator += n;
    }
    // denominator >= 1: the nearest reference object has weight exp(0).
    std::array<double, kLabelCount> shares{};
    for (std::size_t y = 0; y < kLabelCount; ++y) {
        shares[y] = numerators[y] / denominator;
    }
    return shares;
}

double KernelConformity::score(const Observation& z, const Dataset& reference) const {
    return label_shares(z.object, reference)[label_index(z.label)];
}

double kernel_score(const KernelConformity& measure, const Observation& z, const Dataset& reference) {
    return measure.score(z, reference);
}

} // namespace cftrain
