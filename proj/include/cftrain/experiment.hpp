#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cftrain/data.hpp"
#include "cftrain/training.hpp"

namespace cftrain {

struct ExperimentConfig {
    std::vector<int> digits{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<std::size_t> n_sizes{5, 10, 20, 40};
    std::size_t replications = 10;
    std::uint64_t seed = 2020;
    ParamGrid grid;
    std::filesystem::path mnist_images;
    std::filesystem::path mnist_labels;
    std::filesystem::path out_dir = "results";
    std::size_t workers = 1;
};

// Throws ConfigError describing the first violated constraint.
void validate_config(const ExperimentConfig& config);

// Applies one `key = value` setting. Keys use the long flag names without the
// leading dashes (digits, n-sizes, replications, seed, grid-min, grid-max,
// grid-points, mnist-images, mnist-labels, out, workers); '_' may replace '-'.
void apply_config_entry(std::string_view key, std::string_view value, ExperimentConfig& config);

// Reads `key = value` lines; blank lines and lines starting with '#' are skipped.
void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config);

struct CellKey {
    int digit;
    std::size_t n_size;
    std::size_t replication;
};

struct CellResult {
    CellKey key;
    TrainedModels models;
    // Regime-matched test score of each regime over the grid (see test_objective).
    std::array<std::vector<CurvePoint>, 4> test_curves;
    ScoreReport report;
};

// Cells in (digit, n_size, replication) order.
std::vector<CellKey> enumerate_cells(const ExperimentConfig& config);

CellResult run_cell(const MnistPool& pool, const ExperimentConfig& config, const CellKey& key);

struct CellFailure {
    CellKey key;
    std::string message;
};

struct MatrixResult {
    std::vector<CellResult> cells;  // successful cells, in enumerate_cells order
    std::vector<CellFailure> failures;
};

/// Runs every cell on `config.workers` threads. Failed cells are logged with
/// their coordinates and skipped. The result does not depend on the worker count.
MatrixResult run_matrix(const MnistPool& pool, const ExperimentConfig& config, std::ostream& log);

inline constexpr std::array<std::string_view, 4> kScoreNames{"PE-test/PE-train", "PE-test/OF-train",
                                                             "OF-test/PE-train", "OF-test/OF-train"};

// Score of `report` named kScoreNames[i].
double score_at(const ScoreReport& report, std::size_t i);

struct SampleSummary {
    double mean;
    double std_dev;  // n - 1 denominator; 0 for a single value
    double median;
    double p25;
    double p75;
    std::size_t count;
};

// Percentiles interpolate linearly between order statistics at q (n - 1).
SampleSummary summarize(std::vector<double> values);

struct AggregateRow {
    int digit;
    std::size_t n_size;
    std::string score;
    SampleSummary summary;
};

std::vector<AggregateRow> aggregate(std::span<const CellResult> cells);

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

void write_scores_csv(std::ostream& out, std::span<const CellResult> cells);
void write_curves_csv(std::ostream& out, std::span<const CellResult> cells);
void write_summary_csv(std::ostream& out, std::span<const AggregateRow> rows);

/// Loads MNIST, runs the matrix and writes scores.csv, curves.csv and
/// summary.csv into config.out_dir. Returns 0 iff every cell succeeded.
int run_experiment(const ExperimentConfig& config, std::ostream& log);

} // namespace cftrain
