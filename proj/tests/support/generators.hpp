#pragma once

// Hand-rolled generators for the property tests. Every generator takes the
// engine explicitly so each test is reproducible from its seed.

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "cftrain/core.hpp"
#include "cftrain/data.hpp"

namespace cftrain::testing {

inline ObjectVector random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(dim);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& c : x) {
            c = normal(rng);
            norm2 += c * c;
        }
    } while (norm2 == 0.0);
    const double norm = std::sqrt(norm2);
    for (double& c : x) {
        c /= norm;
    }
    return ObjectVector(std::move(x));
}

inline ObjectVector basis_vector(std::size_t dim, std::size_t i, double sign = 1.0) {
    std::vector<double> x(dim, 0.0);
    x[i] = sign;
    return ObjectVector(std::move(x));
}

inline Label random_label(std::mt19937_64& rng) {
    return std::bernoulli_distribution(0.5)(rng) ? Label::one : Label::zero;
}

inline std::shared_ptr<const ObjectPool> random_pool(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    std::vector<ObjectVector> objects;
    objects.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        objects.push_back(random_unit_vector(rng, dim));
    }
    return std::make_shared<const ObjectPool>(std::move(objects));
}

// Observations over pool objects [first, first + count) with random labels.
inline Dataset random_dataset(std::mt19937_64& rng, const std::shared_ptr<const ObjectPool>& pool, std::size_t first,
                              std::size_t count) {
    std::vector<Observation> items;
    for (std::size_t i = 0; i < count; ++i) {
        items.push_back({static_cast<ObjectId>(first + i), random_label(rng)});
    }
    return Dataset(pool, std::move(items));
}

// Half label 0, half label 1 (first half is label 1).
inline Dataset balanced_dataset(const std::shared_ptr<const ObjectPool>& pool, std::size_t first, std::size_t count) {
    std::vector<Observation> items;
    for (std::size_t i = 0; i < count; ++i) {
        items.push_back({static_cast<ObjectId>(first + i), i < count / 2 ? Label::one : Label::zero});
    }
    return Dataset(pool, std::move(items));
}

inline double random_log_rho(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(-5.0, 8.5)(rng);
}

/// In-memory MNIST-shaped pool: `per_digit` images per digit. Each digit has a
/// prototype stroke pattern and every image perturbs it, so digits are
/// separable but not trivially so.
inline MnistPool synthetic_mnist(std::size_t per_digit, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> pixels;
    std::vector<std::uint8_t> digits;
    std::array<std::vector<std::uint8_t>, 10> prototypes;
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& proto : prototypes) {
        proto.resize(kImageDimension);
        for (auto& p : proto) {
            p = static_cast<std::uint8_t>(byte(rng) < 60 ? 255 : 0);
        }
    }
    std::bernoulli_distribution flip(0.15);
    for (std::size_t i = 0; i < per_digit; ++i) {
        for (std::uint8_t d = 0; d < 10; ++d) {
            for (std::size_t p = 0; p < kImageDimension; ++p) {
                const std::uint8_t base = prototypes[d][p];
                pixels.push_back(flip(rng) ? static_cast<std::uint8_t>(byte(rng)) : base);
            }
            digits.push_back(d);
        }
    }
    return MnistPool(std::move(pixels), std::move(digits));
}

} // namespace cftrain::testing
