// Runs the digit-discrimination experiment matrix and writes
// scores.csv, curves.csv and summary.csv.

#include <exception>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "cftrain/errors.hpp"
#include "cftrain/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Train split-conformal kernel classifiers by observed fuzziness or prediction error"};

    std::string config_file;
    app.add_option("--config", config_file, "Plain key=value config file; flags take precedence")
        ->check(CLI::ExistingFile);

    // Every flag is kept as text and applied through the same path as the
    // config file, after it.
    const std::vector<std::pair<std::string, std::string>> flags{
        {"digits", "Comma-separated digits to discriminate (default 0,...,9)"},
        {"n-sizes", "Comma-separated n_size values (default 5,10,20,40)"},
        {"replications", "Replications per (digit, n_size) cell (default 10)"},
        {"seed", "Root seed (default 2020)"},
        {"grid-min", "Smallest log(rho) (default -5)"},
        {"grid-max", "Upper log(rho) bound, excluded (default 10)"},
        {"grid-points", "Number of grid points (default 10)"},
        {"mnist-images", "IDX3 image file, optionally .gz"},
        {"mnist-labels", "IDX1 label file, optionally .gz"},
        {"out", "Output directory (default results)"},
        {"workers", "Worker threads (default 1)"},
    };
    std::map<std::string, std::string> values;
    for (const auto& [name, help] : flags) {
        app.add_option("--" + name, values[name], help);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        cftrain::ExperimentConfig config;
        if (!config_file.empty()) {
            cftrain::apply_config_file(config_file, config);
        }
        for (const auto& [name, help] : flags) {
            if (app.count("--" + name) > 0) {
                cftrain::apply_config_entry(name, values[name], config);
            }
        }
        if (config.mnist_images.empty() || config.mnist_labels.empty()) {
            std::cerr << "error: --mnist-images and --mnist-labels are required\n";
            return 2;
        }
        return cftrain::run_experiment(config, std::cerr);
    } catch (const cftrain::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
