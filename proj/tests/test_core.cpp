#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cftrain/core.hpp"
#include "cftrain/errors.hpp"
#include "support/generators.hpp"

namespace cftrain {
namespace {

using testing::basis_vector;

std::shared_ptr<const ObjectPool> three_basis_pool() {
    return std::make_shared<const ObjectPool>(
        std::vector<ObjectVector>{basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2)});
}

TEST(ObjectVector, RejectsNonUnitAndNonFinite) {
    EXPECT_THROW(ObjectVector({1.0, 1.0}), InvalidObject);
    EXPECT_THROW(ObjectVector({}), InvalidObject);
    EXPECT_THROW(ObjectVector({std::numeric_limits<double>::quiet_NaN(), 1.0}), InvalidObject);
    EXPECT_NO_THROW(ObjectVector({0.6, 0.8}));
    EXPECT_NO_THROW(ObjectVector({1.0 + 5e-10}));
}

TEST(Dataset, RejectsObjectsOutsidePool) {
    EXPECT_THROW(Dataset(three_basis_pool(), {{3, Label::one}}), InvalidParameter);
}

TEST(BagSum, DisjointSingletons) {
    const auto pool = three_basis_pool();
    const Observation z1{0, Label::one};
    const Observation z2{1, Label::zero};
    const auto sum = bag_sum(Dataset(pool, {z1}), Dataset(pool, {z2}));
    EXPECT_EQ(sum.size(), 2u);
    EXPECT_EQ(sum.multiplicity(z1), 1u);
    EXPECT_EQ(sum.multiplicity(z2), 1u);
}

TEST(BagSum, MultiplicityAdds) {
    const auto pool = three_basis_pool();
    const Observation z1{0, Label::one};
    const auto sum = bag_sum(Dataset(pool, {z1}), Dataset(pool, {z1}));
    EXPECT_EQ(sum.size(), 2u);
    EXPECT_EQ(sum.multiplicity(z1), 2u);
}

TEST(BagSum, EmptyIsIdentity) {
    const auto pool = three_basis_pool();
    const Dataset d(pool, {{0, Label::one}, {1, Label::zero}});
    const auto sum = bag_sum(d, Dataset());
    EXPECT_EQ(sum.size(), 2u);
    EXPECT_EQ(sum.multiplicity({0, Label::one}), 1u);
    EXPECT_EQ(sum.multiplicity({1, Label::zero}), 1u);
}

TEST(BagSum, DifferentPoolsRejected) {
    EXPECT_THROW(bag_sum(Dataset(three_basis_pool(), {{0, Label::one}}), Dataset(three_basis_pool(), {{0, Label::one}})),
                 InvalidParameter);
}

TEST(LeaveOneOut, RemovesOneCopy) {
    const auto pool = three_basis_pool();
    const Observation z1{0, Label::one};
    const Observation z2{1, Label::one};
    const auto rest = leave_one_out(Dataset(pool, {z1, z1, z2}), z1);
    EXPECT_EQ(rest.size(), 2u);
    EXPECT_EQ(rest.multiplicity(z1), 1u);
    EXPECT_EQ(rest.multiplicity(z2), 1u);
}

TEST(LeaveOneOut, SingletonBecomesEmpty) {
    const auto pool = three_basis_pool();
    const Observation z1{0, Label::one};
    EXPECT_TRUE(leave_one_out(Dataset(pool, {z1}), z1).empty());
}

TEST(LeaveOneOut, MissingObservation) {
    const auto pool = three_basis_pool();
    EXPECT_THROW(leave_one_out(Dataset(pool, {{0, Label::one}}), {1, Label::one}), MissingObservation);
    // Same object, other label: a different observation.
    EXPECT_THROW(leave_one_out(Dataset(pool, {{0, Label::one}}), {0, Label::zero}), MissingObservation);
    EXPECT_THROW(leave_one_out(Dataset(), {0, Label::one}), MissingObservation);
}

TEST(SameObservation, BitwiseEqualObjectsAtDifferentIndices) {
    const auto pool = std::make_shared<const ObjectPool>(
        std::vector<ObjectVector>{basis_vector(2, 0), basis_vector(2, 0), ObjectVector({0.6, 0.8})});
    EXPECT_TRUE(same_observation(*pool, {0, Label::one}, {1, Label::one}));
    EXPECT_FALSE(same_observation(*pool, {0, Label::one}, {2, Label::one}));
    // -0.0 and 0.0 compare equal as doubles but not bitwise.
    const auto signed_zero = std::make_shared<const ObjectPool>(
        std::vector<ObjectVector>{ObjectVector({1.0, 0.0}), ObjectVector({1.0, -0.0})});
    EXPECT_FALSE(same_observation(*signed_zero, {0, Label::one}, {1, Label::one}));

    const Dataset d(pool, {{0, Label::one}, {2, Label::one}});
    EXPECT_EQ(leave_one_out(d, {1, Label::one}).multiplicity({2, Label::one}), 1u);
}

TEST(SplitQuadruple, DerivedViewsAndValidation) {
    const auto pool = three_basis_pool();
    SplitQuadruple s{Dataset(pool, {{0, Label::one}}), Dataset(pool, {{1, Label::zero}}),
                     Dataset(pool, {{2, Label::one}}), Dataset(pool, {{0, Label::zero}})};
    EXPECT_NO_THROW(s.validate());
    EXPECT_EQ(s.pre_train().size(), 2u);
    EXPECT_EQ(s.train().size(), 3u);
    s.pre_test = Dataset();
    EXPECT_THROW(s.validate(), EmptyDataset);
}

// Multiplicity of every observation of a small pool, as a histogram.
std::vector<std::size_t> histogram(const Dataset& d, std::size_t pool_size) {
    std::vector<std::size_t> h(pool_size * kLabelCount, 0);
    for (const auto& z : d.items()) {
        ++h[z.object * kLabelCount + label_index(z.label)];
    }
    return h;
}

TEST(BagProperties, SumCommutesAssociatesAndLeaveOneOutInverts) {
    std::mt19937_64 rng(11);
    const std::size_t pool_size = 6;
    const auto pool = testing::random_pool(rng, pool_size, 4);
    std::uniform_int_distribution<std::size_t> size(0, 5);
    std::uniform_int_distribution<ObjectId> object(0, pool_size - 1);
    const auto random_bag = [&] {
        std::vector<Observation> items;
        for (std::size_t i = size(rng); i > 0; --i) {
            items.push_back({object(rng), testing::random_label(rng)});
        }
        return Dataset(pool, std::move(items));
    };
    for (int trial = 0; trial < 300; ++trial) {
        const Dataset a = random_bag();
        const Dataset b = random_bag();
        const Dataset c = random_bag();
        EXPECT_EQ(histogram(bag_sum(a, b), pool_size), histogram(bag_sum(b, a), pool_size));
        EXPECT_EQ(histogram(bag_sum(bag_sum(a, b), c), pool_size), histogram(bag_sum(a, bag_sum(b, c)), pool_size));

        const Observation z{object(rng), testing::random_label(rng)};
        const Dataset with_z = bag_sum(a, Dataset(pool, {z}));
        EXPECT_EQ(histogram(leave_one_out(with_z, z), pool_size), histogram(a, pool_size));
        EXPECT_EQ(with_z.multiplicity(z), a.multiplicity(z) + 1);
    }
}

} // namespace
} // namespace cftrain
