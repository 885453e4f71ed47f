#include "cftrain/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "cftrain/errors.hpp"

namespace cftrain {

ObjectVector::ObjectVector(std::vector<double> components) : components_(std::move(components)) {
    if (components_.empty()) {
        throw InvalidObject("object vector has no components");
    }
    double norm2 = 0.0;
    for (double c : components_) {
        if (!std::isfinite(c)) {
            throw InvalidObject("object vector has a non-finite component");
        }
        norm2 += c * c;
    }
    const double norm = std::sqrt(norm2);
    if (std::abs(norm - 1.0) > kNormTolerance) {
        throw InvalidObject("object vector norm " + std::to_string(norm) + " is not 1");
    }
}

ObjectPool::ObjectPool(std::vector<ObjectVector> objects) : objects_(std::move(objects)) {}

Dataset::Dataset(std::shared_ptr<const ObjectPool> pool, std::vector<Observation> items)
    : pool_(std::move(pool)), items_(std::move(items)) {
    if (!items_.empty() && !pool_) {
        throw InvalidParameter("dataset with observations needs an object pool");
    }
    for (const auto& z : items_) {
        if (z.object >= pool_->size()) {
            throw InvalidParameter("observation refers to object " + std::to_string(z.object) +
                                   " outside a pool of size " + std::to_string(pool_->size()));
        }
    }
}

std::size_t Dataset::multiplicity(const Observation& z) const {
    if (!pool_) {
        return 0;
    }
    return static_cast<std::size_t>(std::count_if(items_.begin(), items_.end(), [&](const Observation& item) {
        return same_observation(*pool_, item, z);
    }));
}

bool same_observation(const ObjectPool& pool, const Observation& a, const Observation& b) {
    if (a.label != b.label) {
        return false;
    }
    if (a.object == b.object) {
        return true;
    }
    const auto x = pool[a.object].components();
    const auto y = pool[b.object].components();
    return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size_bytes()) == 0;
}

Dataset bag_sum(const Dataset& a, const Dataset& b) {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    if (a.pool() != b.pool()) {
        throw InvalidParameter("bag_sum of datasets over different object pools");
    }
    std::vector<Observation> items;
    items.reserve(a.size() + b.size());
    items.insert(items.end(), a.items().begin(), a.items().end());
    items.insert(items.end(), b.items().begin(), b.items().end());
    return Dataset(a.pool(), std::move(items));
}

Dataset leave_one_out(const Dataset& d, const Observation& z) {
    const auto items = d.items();
    const auto it = d.pool() ? std::find_if(items.begin(), items.end(),
                                            [&](const Observation& item) {
                                                return same_observation(*d.pool(), item, z);
                                            })
                             : items.end();
    if (it == items.end()) {
        throw MissingObservation("observation (object " + std::to_string(z.object) + ", label " +
                                 std::to_string(label_index(z.label)) + ") is not in the dataset");
    }
    std::vector<Observation> rest;
    rest.reserve(items.size() - 1);
    rest.insert(rest.end(), items.begin(), it);
    rest.insert(rest.end(), it + 1, items.end());
    return Dataset(d.pool(), std::move(rest));
}

void SplitQuadruple::validate() const {
    if (pre_pre_train.empty() || pre_pre_test.empty() || pre_test.empty() || test.empty()) {
        throw EmptyDataset("every dataset of a split quadruple must be nonempty");
    }
}

} // namespace cftrain
