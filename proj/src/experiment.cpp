#include "cftrain/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>
#include <utility>

#include "cftrain/errors.hpp"

namespace cftrain {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, std::string_view key) {
    std::vector<T> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        values.push_back(parse_number<T>(text.substr(0, comma), key));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    if (values.empty()) {
        throw ConfigError("empty list for " + std::string(key));
    }
    return values;
}

std::string cell_name(const CellKey& key) {
    return "digit=" + std::to_string(key.digit) + " n_size=" + std::to_string(key.n_size) +
           " replication=" + std::to_string(key.replication);
}

} // namespace

void validate_config(const ExperimentConfig& config) {
    if (config.digits.empty()) {
        throw ConfigError("no digits selected");
    }
    for (int d : config.digits) {
        if (d < 0 || d > 9) {
            throw ConfigError("digit " + std::to_string(d) + " outside 0..9");
        }
    }
    if (config.n_sizes.empty()) {
        throw ConfigError("no n_size selected");
    }
    for (std::size_t n : config.n_sizes) {
        if (n < 2) {
            throw ConfigError("n_size must be at least 2 (leave-one-out calibration), got " + std::to_string(n));
        }
    }
    if (config.replications < 1) {
        throw ConfigError("replications must be at least 1");
    }
    if (config.workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    try {
        grid_values(config.grid);
    } catch (const InvalidGrid& e) {
        throw ConfigError(e.what());
    }
}

void apply_config_entry(std::string_view key, std::string_view value, ExperimentConfig& config) {
    std::string k(trim(key));
    std::replace(k.begin(), k.end(), '_', '-');
    value = trim(value);
    if (k == "digits") {
        config.digits = parse_list<int>(value, k);
    } else if (k == "n-sizes") {
        config.n_sizes = parse_list<std::size_t>(value, k);
    } else if (k == "replications") {
        config.replications = parse_number<std::size_t>(value, k);
    } else if (k == "seed") {
        config.seed = parse_number<std::uint64_t>(value, k);
    } else if (k == "grid-min") {
        config.grid.min_exp = parse_number<double>(value, k);
    } else if (k == "grid-max") {
        config.grid.max_exp = parse_number<double>(value, k);
    } else if (k == "grid-points") {
        config.grid.points = parse_number<std::size_t>(value, k);
    } else if (k == "mnist-images") {
        config.mnist_images = std::string(value);
    } else if (k == "mnist-labels") {
        config.mnist_labels = std::string(value);
    } else if (k == "out") {
        config.out_dir = std::string(value);
    } else if (k == "workers") {
        config.workers = parse_number<std::size_t>(value, k);
    } else {
        throw ConfigError("unknown configuration key '" + k + "'");
    }
}

void apply_config_file(const std::filesystem::path& path, ExperimentConfig& config) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        }
        apply_config_entry(text.substr(0, eq), text.substr(eq + 1), config);
    }
}

std::vector<CellKey> enumerate_cells(const ExperimentConfig& config) {
    std::vector<CellKey> cells;
    for (int digit : config.digits) {
        for (std::size_t n : config.n_sizes) {
            for (std::size_t r = 0; r < config.replications; ++r) {
                cells.push_back({digit, n, r});
            }
        }
    }
    return cells;
}

CellResult run_cell(const MnistPool& pool, const ExperimentConfig& config, const CellKey& key) {
    const TaskSpec spec{key.digit, key.n_size, config.seed, key.replication};
    const SplitQuadruple split = sample_task(pool, spec);
    const KernelFamily family = KernelFamily::for_split(split);

    CellResult result{key, train_all(split, config.grid, family), {}, {}};
    const auto rhos = grid_values(config.grid);
    for (Regime regime : kRegimes) {
        auto& curve = result.test_curves[regime_index(regime)];
        for (double rho : rhos) {
            curve.push_back({rho, test_objective(regime, split, family.at(rho))});
        }
    }
    result.report = evaluate(result.models, split, family);
    return result;
}

MatrixResult run_matrix(const MnistPool& pool, const ExperimentConfig& config, std::ostream& log) {
    validate_config(config);
    const auto keys = enumerate_cells(config);
    std::vector<std::optional<CellResult>> results(keys.size());
    std::vector<std::optional<std::string>> errors(keys.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;

    const auto worker = [&] {
        for (std::size_t i = next++; i < keys.size(); i = next++) {
            try {
                results[i] = run_cell(pool, config, keys[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
                const std::lock_guard lock(log_mutex);
                log << "cell " << cell_name(keys[i]) << " failed: " << e.what() << '\n';
            }
        }
    };
    {
        std::vector<std::jthread> threads;
        const std::size_t count = std::min(config.workers, std::max<std::size_t>(keys.size(), 1));
        for (std::size_t t = 0; t < count; ++t) {
            threads.emplace_back(worker);
        }
    }

    MatrixResult matrix;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (results[i]) {
            matrix.cells.push_back(std::move(*results[i]));
        } else {
            matrix.failures.push_back({keys[i], errors[i].value_or("unknown error")});
        }
    }
    return matrix;
}

double score_at(const ScoreReport& report, std::size_t i) {
    switch (i) {
    case 0: return report.pe_test_pe_train;
    case 1: return report.pe_test_of_train;
    case 2: return report.of_test_pe_train;
    case 3: return report.of_test_of_train;
    }
    throw InvalidParameter("score index " + std::to_string(i) + " out of range");
}

SampleSummary summarize(std::vector<double> values) {
    if (values.empty()) {
        throw EmptyDataset("cannot summarize an empty sample");
    }
    const std::size_t n = values.size();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    const double std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

    std::sort(values.begin(), values.end());
    const auto percentile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] + frac * (values[hi] - values[lo]);
    };
    return {mean, std_dev, percentile(0.5), percentile(0.25), percentile(0.75), n};
}

std::vector<AggregateRow> aggregate(std::span<const CellResult> cells) {
    std::map<std::pair<int, std::size_t>, std::array<std::vector<double>, 4>> groups;
    for (const auto& cell : cells) {
        auto& group = groups[{cell.key.digit, cell.key.n_size}];
        for (std::size_t i = 0; i < kScoreNames.size(); ++i) {
            group[i].push_back(score_at(cell.report, i));
        }
    }
    std::vector<AggregateRow> rows;
    for (const auto& [key, group] : groups) {
        for (std::size_t i = 0; i < kScoreNames.size(); ++i) {
            rows.push_back({key.first, key.second, std::string(kScoreNames[i]), summarize(group[i])});
        }
    }
    return rows;
}

std::string format_double(double value) {
    std::array<char, 64> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

void write_scores_csv(std::ostream& out, std::span<const CellResult> cells) {
    out << "digit,n_size,replication,rho_pe,rho_pre_pe,rho_of,rho_pre_of,"
           "pe_test_pe_train,pe_test_of_train,of_test_pe_train,of_test_of_train,ties\n";
    for (const auto& cell : cells) {
        const auto& r = cell.report;
        out << cell.key.digit << ',' << cell.key.n_size << ',' << cell.key.replication;
        for (double rho : r.rho_star) {
            out << ',' << format_double(rho);
        }
        for (std::size_t i = 0; i < kScoreNames.size(); ++i) {
            out << ',' << format_double(score_at(r, i));
        }
        out << ',' << r.ties << '\n';
    }
}

void write_curves_csv(std::ostream& out, std::span<const CellResult> cells) {
    out << "digit,n_size,replication,regime,rho,log_rho,phase,value\n";
    for (const auto& cell : cells) {
        for (Regime regime : kRegimes) {
            const auto emit = [&](const std::vector<CurvePoint>& curve, std::string_view phase) {
                for (const auto& p : curve) {
                    out << cell.key.digit << ',' << cell.key.n_size << ',' << cell.key.replication << ','
                        << regime_name(regime) << ',' << format_double(p.rho) << ','
                        << format_double(std::log(p.rho)) << ',' << phase << ',' << format_double(p.value) << '\n';
                }
            };
            emit(cell.models[regime_index(regime)].objective_curve, "train");
            emit(cell.test_curves[regime_index(regime)], "test");
        }
    }
}

void write_summary_csv(std::ostream& out, std::span<const AggregateRow> rows) {
    out << "digit,n_size,score,mean,std,median,p25,p75,count\n";
    for (const auto& row : rows) {
        const auto& s = row.summary;
        out << row.digit << ',' << row.n_size << ',' << row.score << ',' << format_double(s.mean) << ','
            << format_double(s.std_dev) << ',' << format_double(s.median) << ',' << format_double(s.p25) << ','
            << format_double(s.p75) << ',' << s.count << '\n';
    }
}

int run_experiment(const ExperimentConfig& config, std::ostream& log) {
    validate_config(config);
    const MnistPool pool = load_idx(config.mnist_images, config.mnist_labels);
    log << "loaded " << pool.size() << " images from " << config.mnist_images.string() << '\n';

    const MatrixResult matrix = run_matrix(pool, config, log);

    std::filesystem::create_directories(config.out_dir);
    const auto open = [&](const char* name) {
        std::ofstream out(config.out_dir / name, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot write " + (config.out_dir / name).string());
        }
        return out;
    };
    {
        auto out = open("scores.csv");
        write_scores_csv(out, matrix.cells);
    }
    {
        auto out = open("curves.csv");
        write_curves_csv(out, matrix.cells);
    }
    {
        auto out = open("summary.csv");
        const auto rows = aggregate(matrix.cells);
        write_summary_csv(out, rows);
    }
    log << matrix.cells.size() << " cells succeeded, " << matrix.failures.size() << " failed; outputs in "
        << config.out_dir.string() << '\n';
    return matrix.failures.empty() ? 0 : 1;
}

} // namespace cftrain
