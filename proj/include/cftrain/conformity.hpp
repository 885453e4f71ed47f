#pragma once

#include <array>
#include <memory>
#include <vector>

#include "cftrain/core.hpp"

namespace cftrain {

/// Q((x, y), D): how well an observation conforms to a reference dataset.
/// Implementations must be pure; higher means more conforming.
class ConformityMeasure {
public:
    virtual ~ConformityMeasure() = default;
    virtual double score(const Observation& z, const Dataset& reference) const = 0;
};

// ||a - b||^2, summed componentwise so identical vectors give exactly 0.
double squared_distance(const ObjectVector& a, const ObjectVector& b);

/// Symmetric matrix of squared distances between all objects of a pool.
/// Distances do not depend on rho, so one matrix serves every grid point.
class DistanceMatrix {
public:
    explicit DistanceMatrix(const ObjectPool& pool);
    // Row-major size x size values; must be finite, nonnegative and symmetric.
    DistanceMatrix(std::size_t size, std::vector<double> values);

    std::size_t size() const { return size_; }
    double operator()(ObjectId a, ObjectId b) const { return values_[a * size_ + b]; }

private:
    std::size_t size_;
    std::vector<double> values_;
};

/// Gaussian-kernel label share:
///   Q_rho((x, y), D) = sum_{(x', y') in D, y' = y} k(x, x') / sum_{(x', y') in D} k(x, x'),
///   k(x, x') = exp(-rho ||x - x'||^2).
///
/// Weights are evaluated as exp(-rho (d^2 - d_min^2)) where d_min^2 is the
/// smallest squared distance to the reference. The ratio is unchanged and the
/// largest weight is exactly 1, so the denominator never underflows even at
/// rho ~ e^8.5.
class KernelConformity final : public ConformityMeasure {
public:
    // Throws InvalidParameter unless rho is finite and >= 0. Without a distance
    // cache, distances are computed from the reference's pool on demand.
    explicit KernelConformity(double rho, std::shared_ptr<const DistanceMatrix> distances = nullptr);

    double rho() const { return rho_; }

    // Throws EmptyReference when reference is empty.
    double score(const Observation& z, const Dataset& reference) const override;

    // Scores of every label for object x in one pass; entries sum to 1.
    std::array<double, kLabelCount> label_shares(ObjectId x, const Dataset& reference) const;

private:
    double rho_;
    std::shared_ptr<const DistanceMatrix> distances_;
};

// Convenience wrapper with the shape of the mathematical definition.
double kernel_score(const KernelConformity& measure, const Observation& z, const Dataset& reference);

} // namespace cftrain
