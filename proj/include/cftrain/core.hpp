#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace cftrain {

// Binary label space. The formulas elsewhere loop over kLabels, so they read
// the same as the multiclass definitions; only this enum fixes |Y| = 2.
enum class Label : std::uint8_t { zero = 0, one = 1 };

inline constexpr std::array<Label, 2> kLabels{Label::zero, Label::one};
inline constexpr std::size_t kLabelCount = kLabels.size();

constexpr std::size_t label_index(Label y) { return static_cast<std::size_t>(y); }

// Dimension of a vectorized 28x28 image.
inline constexpr std::size_t kImageDimension = 28 * 28;

/// A unit-L2-norm real vector with finite components.
///
/// Construction validates the invariants (tolerance 1e-9 on the norm) and
/// throws InvalidObject otherwise. MNIST objects have kImageDimension
/// components; other dimensions are accepted so synthetic tests can use
/// small vectors.
class ObjectVector {
public:
    static constexpr double kNormTolerance = 1e-9;

    explicit ObjectVector(std::vector<double> components);

    std::span<const double> components() const { return components_; }
    std::size_t dimension() const { return components_.size(); }

private:
    std::vector<double> components_;
};

/// Immutable store of objects shared by all datasets of one experiment.
class ObjectPool {
public:
    explicit ObjectPool(std::vector<ObjectVector> objects);

    std::size_t size() const { return objects_.size(); }
    const ObjectVector& operator[](std::size_t i) const { return objects_[i]; }

private:
    std::vector<ObjectVector> objects_;
};

using ObjectId = std::uint32_t;

// An observation refers to its object through the pool index.
struct Observation {
    ObjectId object = 0;
    Label label = Label::zero;
};

/// A bag of observations over a shared pool. The stored order is incidental;
/// every criterion computed from a Dataset is invariant under permutation.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::shared_ptr<const ObjectPool> pool, std::vector<Observation> items);

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::span<const Observation> items() const { return items_; }
    const Observation& operator[](std::size_t i) const { return items_[i]; }

    const std::shared_ptr<const ObjectPool>& pool() const { return pool_; }
    const ObjectVector& object(const Observation& z) const { return (*pool_)[z.object]; }

    // Number of stored observations equal to z (see same_observation).
    std::size_t multiplicity(const Observation& z) const;

private:
    std::shared_ptr<const ObjectPool> pool_;
    std::vector<Observation> items_;
};

// Exact equality: equal labels and bitwise-identical object components.
bool same_observation(const ObjectPool& pool, const Observation& a, const Observation& b);

// Multiset sum; both operands must share a pool (or one may be empty).
Dataset bag_sum(const Dataset& a, const Dataset& b);

// Removes exactly one copy of z. Throws MissingObservation if z is absent.
Dataset leave_one_out(const Dataset& d, const Observation& z);

/// The four disjoint datasets of one replication and their derived views.
struct SplitQuadruple {
    Dataset pre_pre_train;
    Dataset pre_pre_test;
    Dataset pre_test;
    Dataset test;

    Dataset pre_train() const { return bag_sum(pre_pre_train, pre_pre_test); }
    Dataset train() const { return bag_sum(pre_train(), pre_test); }

    // Throws EmptyDataset if any member is empty.
    void validate() const;
};

} // namespace cftrain
