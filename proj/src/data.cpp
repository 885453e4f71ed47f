#include "cftrain/data.hpp"

#include <zlib.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <memory>
#include <random>
#include <string>

#include "cftrain/errors.hpp"

namespace cftrain {

namespace {

std::vector<std::uint8_t> read_gzip(const std::filesystem::path& path) {
    std::unique_ptr<gzFile_s, decltype(&gzclose)> file(gzopen(path.c_str(), "rb"), &gzclose);
    if (!file) {
        throw TruncatedFile(path.string() + ": cannot open at offset 0");
    }
    std::vector<std::uint8_t> bytes;
    std::array<std::uint8_t, 1 << 16> buffer{};
    for (;;) {
        const int n = gzread(file.get(), buffer.data(), static_cast<unsigned>(buffer.size()));
        if (n < 0) {
            throw TruncatedFile(path.string() + ": corrupt gzip stream at decompressed offset " +
                                std::to_string(bytes.size()));
        }
        if (n == 0) {
            break;
        }
        bytes.insert(bytes.end(), buffer.begin(), buffer.begin() + n);
    }
    return bytes;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    if (path.extension() == ".gz") {
        return read_gzip(path);
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw TruncatedFile(path.string() + ": cannot open at offset 0");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset, const std::filesystem::path& path) {
    if (bytes.size() < offset + 4) {
        throw TruncatedFile(path.string() + ": header ends at offset " + std::to_string(bytes.size()) +
                            ", expected a 32-bit field at offset " + std::to_string(offset));
    }
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void expect_magic(std::uint32_t found, std::uint32_t expected, const std::filesystem::path& path) {
    if (found != expected) {
        throw BadMagic(path.string() + ": magic " + std::to_string(found) + " at offset 0, expected " +
                       std::to_string(expected));
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform integer in [0, bound) by rejection; portable across standard libraries.
std::size_t uniform_below(std::mt19937_64& rng, std::size_t bound) {
    const std::uint64_t n = bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = 0;
    do {
        v = rng();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
}

bool is_zero_image(std::span<const std::uint8_t, kImageDimension> raw) {
    for (std::uint8_t b : raw) {
        if (b != 0) {
            return false;
        }
    }
    return true;
}

// Partial Fisher-Yates over `candidates`, keeping the first `needed` usable images.
std::vector<std::size_t> draw_distinct(const MnistPool& pool, std::vector<std::size_t> candidates,
                                       std::size_t needed, std::mt19937_64& rng, const char* what) {
    std::vector<std::size_t> chosen;
    chosen.reserve(needed);
    for (std::size_t i = 0; i < candidates.size() && chosen.size() < needed; ++i) {
        const std::size_t j = i + uniform_below(rng, candidates.size() - i);
        std::swap(candidates[i], candidates[j]);
        if (!is_zero_image(pool.image(candidates[i]))) {
            chosen.push_back(candidates[i]);
        }
    }
    if (chosen.size() < needed) {
        throw InsufficientData(std::string("need ") + std::to_string(needed) + " " + what +
                               " images, pool has only " + std::to_string(chosen.size()) + " usable");
    }
    return chosen;
}

} // namespace

MnistPool::MnistPool(std::vector<std::uint8_t> pixels, std::vector<std::uint8_t> digits)
    : pixels_(std::move(pixels)), digits_(std::move(digits)) {
    if (pixels_.size() != digits_.size() * kImageDimension) {
        throw CountMismatch("pool has " + std::to_string(pixels_.size()) + " pixel bytes for " +
                            std::to_string(digits_.size()) + " labels");
    }
    for (std::uint8_t d : digits_) {
        if (d > 9) {
            throw InvalidParameter("digit label " + std::to_string(d) + " outside 0..9");
        }
        ++counts_[d];
    }
}

MnistPool load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path) {
    const auto images = read_file(images_path);
    expect_magic(read_be32(images, 0, images_path), kIdxImagesMagic, images_path);
    const std::uint32_t image_count = read_be32(images, 4, images_path);
    const std::uint32_t rows = read_be32(images, 8, images_path);
    const std::uint32_t cols = read_be32(images, 12, images_path);
    if (rows != kImageSide || cols != kImageSide) {
        throw DimensionMismatch(images_path.string() + ": images are " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " (offset 8), expected 28x28");
    }
    constexpr std::size_t image_header = 16;
    const std::size_t image_bytes = std::size_t{image_count} * kImageDimension;
    if (images.size() < image_header + image_bytes) {
        throw TruncatedFile(images_path.string() + ": pixel data ends at offset " + std::to_string(images.size()) +
                            ", expected " + std::to_string(image_header + image_bytes));
    }

    const auto labels = read_file(labels_path);
    expect_magic(read_be32(labels, 0, labels_path), kIdxLabelsMagic, labels_path);
    const std::uint32_t label_count = read_be32(labels, 4, labels_path);
    if (label_count != image_count) {
        throw CountMismatch(labels_path.string() + ": label count " + std::to_string(label_count) +
                            " at offset 4 does not match image count " + std::to_string(image_count) + " in " +
                            images_path.string());
    }
    constexpr std::size_t label_header = 8;
    if (labels.size() < label_header + label_count) {
        throw TruncatedFile(labels_path.string() + ": label data ends at offset " + std::to_string(labels.size()) +
                            ", expected " + std::to_string(label_header + label_count));
    }
    for (std::size_t i = 0; i < label_count; ++i) {
        if (labels[label_header + i] > 9) {
            throw InvalidParameter(labels_path.string() + ": label " + std::to_string(labels[label_header + i]) +
                           " at offset " + std::to_string(label_header + i) + " is not a digit");
        }
    }

    std::vector<std::uint8_t> pixels(images.begin() + image_header, images.begin() + image_header + image_bytes);
    std::vector<std::uint8_t> digits(labels.begin() + label_header, labels.begin() + label_header + label_count);
    return MnistPool(std::move(pixels), std::move(digits));
}

ObjectVector vectorize(std::span<const std::uint8_t, kImageDimension> raw) {
    std::vector<double> x(kImageDimension);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < kImageDimension; ++i) {
        x[i] = static_cast<double>(raw[i]) / 255.0;
        norm2 += x[i] * x[i];
    }
    if (norm2 == 0.0) {
        throw ZeroImage("image has no nonzero pixel; normalization is undefined");
    }
    const double norm = std::sqrt(norm2);
    for (double& c : x) {
        c /= norm;
    }
    return ObjectVector(std::move(x));
}

std::uint64_t derive_seed(const TaskSpec& spec) {
    std::uint64_t h = splitmix64(spec.seed);
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.digit_k));
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.n_size));
    h = splitmix64(h ^ static_cast<std::uint64_t>(spec.replication_index));
    return h;
}

TaskDraw draw_task(const MnistPool& pool, const TaskSpec& spec) {
    if (spec.digit_k < 0 || spec.digit_k > 9) {
        throw InvalidParameter("digit_k must be in 0..9, got " + std::to_string(spec.digit_k));
    }
    if (spec.n_size == 0) {
        throw InvalidParameter("n_size must be positive");
    }
    std::vector<std::size_t> positive_candidates;
    std::vector<std::size_t> negative_candidates;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        (pool.digit(i) == spec.digit_k ? positive_candidates : negative_candidates).push_back(i);
    }

    std::mt19937_64 rng(derive_seed(spec));
    const std::size_t needed = 4 * spec.n_size;
    const auto positives = draw_distinct(pool, std::move(positive_candidates), needed, rng, "positive");
    const auto negatives = draw_distinct(pool, std::move(negative_candidates), needed, rng, "negative");

    TaskDraw draw;
    for (std::size_t d = 0; d < 4; ++d) {
        const auto first = static_cast<std::ptrdiff_t>(d * spec.n_size);
        const auto last = first + static_cast<std::ptrdiff_t>(spec.n_size);
        draw.positives[d].assign(positives.begin() + first, positives.begin() + last);
        draw.negatives[d].assign(negatives.begin() + first, negatives.begin() + last);
    }
    return draw;
}

SplitQuadruple sample_task(const MnistPool& pool, const TaskSpec& spec) {
    const TaskDraw draw = draw_task(pool, spec);

    std::vector<ObjectVector> objects;
    objects.reserve(8 * spec.n_size);
    std::array<std::vector<Observation>, 4> items;
    for (std::size_t d = 0; d < 4; ++d) {
        for (const auto* source : {&draw.positives[d], &draw.negatives[d]}) {
            const Label y = source == &draw.positives[d] ? Label::one : Label::zero;
            for (std::size_t index : *source) {
                items[d].push_back({static_cast<ObjectId>(objects.size()), y});
                objects.push_back(vectorize(pool.image(index)));
            }
        }
    }
    auto shared = std::make_shared<const ObjectPool>(std::move(objects));
    SplitQuadruple split{Dataset(shared, std::move(items[0])), Dataset(shared, std::move(items[1])),
                         Dataset(shared, std::move(items[2])), Dataset(shared, std::move(items[3]))};
    split.validate();
    return split;
}

} // namespace cftrain
