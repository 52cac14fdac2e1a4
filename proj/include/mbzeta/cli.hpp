#ifndef MBZETA_CLI_HPP
#define MBZETA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <mbzeta/core.hpp>

namespace mbzeta::cli
{

enum class OutputFormat
{
    Text,
    Json,
    Csv,
};

struct Command
{
    // eval, integrate, rect, residues, tail or verify.
    std::string subcommand;
    // eval only: gamma, lgamma, zeta, hurwitz, beta, bernoulli, zeta_neg,
    // double_sum or stirling.
    std::string function;

    Complex s{0.0, 0.0};
    Complex w{0.0, 0.0};
    unsigned n = 0;

    std::string family = "gammapower";
    double u = 0.5;
    double a = 2.0;
    double c = 1.5;
    double right = 1.5;
    double left = 0.5;
    double T = 10.0;
    double tol = 1e-8;
    bool numerical = false;
    std::size_t M = 20;

    std::string config = "default";
    std::size_t jobs = 1;

    OutputFormat format = OutputFormat::Text;
    std::optional<std::string> output;
};

/// Throws Error(UsageError) naming the offending flag.
Command parse_args(const std::vector<std::string> &args);

/// Runs a parsed command; returns the process exit code (0 success, 1 failed
/// check or numerical error, 2 usage or configuration error).
int execute(const Command &cmd, std::ostream &out, std::ostream &err);

/// parse_args followed by execute, with usage errors reported on `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

} // namespace mbzeta::cli

#endif
