#pragma once

// Command-line front end: one subcommand per experiment, CSV or JSON reports.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "galerkin/bvp.hpp"

namespace galerkin::cli {

enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct CondTableArgs {
    int n_max = 10;
    IndexConvention convention = IndexConvention::shifted;
};

struct BvpArgs {
    std::string family = "sine";
    int n = 10;
    std::string f = "one";
    std::optional<std::string> f_file;
};

struct KernelArgs {
    int n = 10;
    int grid = 4;
    std::optional<double> x;
    std::optional<double> t;
};

struct Fredholm2Args {
    int n = 4;
    double lambda = 2.0;
    std::string kernel = "cos";
    std::string f = "exp1";
};

struct WingArgs {
    int n = 10;
    double t1 = 1.0 / 3.0;
    double t2 = 2.0 / 3.0;
    std::optional<std::size_t> k;
    bool vectors = false;
    std::optional<std::string> export_matrix;
};

struct NonlinearArgs {
    double lambda = 1.0;
    std::string f = "manufactured";
    std::optional<std::string> f_file;
    int m = 10;
    std::vector<int> m_list;  // empty: 1..m
    double tol = 1e-12;
    int max_iters = 100;
};

using Params = std::variant<CondTableArgs, BvpArgs, KernelArgs, Fredholm2Args, WingArgs, NonlinearArgs>;

struct ExperimentConfig {
    Params params;
    Format format = Format::csv;
    std::optional<std::string> output;
};

/// Either a validated config, or an exit code with the text to print
/// (usage/help or a validation message).
struct ParseResult {
    std::optional<ExperimentConfig> config;
    int exit_code = kExitOk;
    std::string message;
};

/// argv[0] is the program name.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Runs a validated experiment, writing the report to `out` (or the configured file).
/// Diagnostics go to `err`. Returns the process exit status.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run.
int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace galerkin::cli
