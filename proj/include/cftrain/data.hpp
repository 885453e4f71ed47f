#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cftrain/core.hpp"

namespace cftrain {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;  // 2051
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;  // 2049
inline constexpr std::size_t kImageSide = 28;

/// Raw MNIST images (row-major 28x28 bytes) with their digit labels.
class MnistPool {
public:
    MnistPool(std::vector<std::uint8_t> pixels, std::vector<std::uint8_t> digits);

    std::size_t size() const { return digits_.size(); }
    std::span<const std::uint8_t, kImageDimension> image(std::size_t i) const {
        return std::span<const std::uint8_t, kImageDimension>(pixels_.data() + i * kImageDimension, kImageDimension);
    }
    std::uint8_t digit(std::size_t i) const { return digits_[i]; }
    std::size_t count(std::size_t digit) const { return counts_.at(digit); }

private:
    std::vector<std::uint8_t> pixels_;
    std::vector<std::uint8_t> digits_;
    std::array<std::size_t, 10> counts_{};
};

/// Reads an IDX3 image file and IDX1 label file. Paths ending in ".gz" are
/// decompressed transparently. Errors (BadMagic, DimensionMismatch,
/// CountMismatch, TruncatedFile) name the file and byte offset.
MnistPool load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path);

// Scales bytes by 1/255, flattens row-major and normalizes to unit L2 norm.
// Throws ZeroImage for an all-zero image.
ObjectVector vectorize(std::span<const std::uint8_t, kImageDimension> raw);

struct TaskSpec {
    int digit_k = 0;
    std::size_t n_size = 5;
    std::uint64_t seed = 0;
    std::size_t replication_index = 0;
};

// Seed of one experiment cell, mixed from the root seed and its coordinates.
std::uint64_t derive_seed(const TaskSpec& spec);

/// Pool indices drawn for one replication, per dataset of the quadruple.
/// Each dataset lists its n_size positives followed by its n_size negatives.
struct TaskDraw {
    std::array<std::vector<std::size_t>, 4> positives;
    std::array<std::vector<std::size_t>, 4> negatives;
};

// Draws 4 n_size distinct digit-k images and 4 n_size distinct other images,
// skipping all-zero images. Throws InsufficientData if the pool runs out.
TaskDraw draw_task(const MnistPool& pool, const TaskSpec& spec);

/// Balanced binary task: label 1 for digit k, label 0 otherwise; every dataset
/// holds n_size of each. A pure function of the pool and the spec.
SplitQuadruple sample_task(const MnistPool& pool, const TaskSpec& spec);

} // namespace cftrain
