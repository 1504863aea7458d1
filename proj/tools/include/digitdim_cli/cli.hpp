#ifndef DIGITDIM_CLI_CLI_HPP
#define DIGITDIM_CLI_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "digitdim/digitdim.hpp"

namespace digitdim::cli {

enum ExitCode : int {
    exit_pass = 0,
    exit_fail = 1,
    exit_inconclusive = 2,
    exit_usage = 3,
};

enum class OutputFormat { json, table };

/// Options shared by the subcommands after parsing.
struct RunConfig {
    std::string subcommand;
    std::string system;
    Direction direction = Direction::lower;
    int level = 1;
    Rational delta;
    /// A rational, or "bd" for tau(b) = log b / (2 log(b-1)).
    std::string tau;
    Precision precision = kDefaultPrecision;
    Rational eps;
    unsigned jobs = 1;
    OutputFormat format = OutputFormat::json;
    std::string output;
};

/// Runs the tool with `args` (program name excluded). Results go to out,
/// diagnostics and progress to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The embedded reproduction manifest (JSON text).
std::string_view reproduce_manifest();

struct ReproCase {
    std::string table;
    Direction direction = Direction::lower;
    int base = 0;
    int missing = 0;
    int level = 1;
    Rational delta;
    std::string tau;
    Verdict expect = Verdict::pass;
};

/// Cases of one manifest table ("all" concatenates every table). With no
/// base filter a table's default_bases apply unless `full` is set.
std::vector<ReproCase> expand_table(std::string_view table, const std::optional<std::vector<int>>& bases,
                                    bool full);

/// Precision from the flag, else DIGITDIM_PRECISION, else the default.
Precision resolve_precision(std::optional<long> flag);

/// Parses a tau argument for a system of the given base.
Rational resolve_tau(std::string_view text, int base);

} // namespace digitdim::cli

#endif
