#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ofd/lattice.hpp"

namespace ofd::cli {

enum class Mode { syn, inh, both };
enum class Format { json, text };

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_data = 2,
};

struct RunConfig {
    std::filesystem::path input;
    std::filesystem::path ontology;
    Mode mode = Mode::syn;
    std::optional<std::uint32_t> theta;
    double tau = 1.0;
    std::optional<std::size_t> max_level;
    /// Standard output when unset.
    std::optional<std::filesystem::path> output;
    Format format = Format::json;
    std::optional<std::filesystem::path> stats;
    Optimizations optimizations;
    unsigned threads = 0;

    char delimiter = ',';
    bool header = true;
    bool case_insensitive = false;

    bool report_violations = false;
    /// Defaults to <output>.violations.<json|txt>, or standard output.
    std::optional<std::filesystem::path> violations;

    std::optional<double> inject_errors;
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> inject_log;

    /// Throws ConfigError.
    void validate() const;
    std::vector<OfdKind> kinds() const;
};

/// Loads, discovers and writes every artifact. Nothing is written unless all
/// steps succeed. Errors go to `err`; standard-output artifacts go to `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ofd::cli
