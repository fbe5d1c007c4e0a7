#pragma once

// knotrep analyze|build|cohomology|deform <file> [options]
// Reports are JSON ("schema": 1); --pretty prints an indented text view.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "knotrep/deform.hpp"

namespace knotrep::cli {

enum ExitCode { ok = 0, parse = 2, hypothesis = 3, divergence = 4, internal = 5 };

struct Options {
    std::string command, file;
    unsigned n = 2;
    std::size_t factor = 0;
    std::size_t lambda_branch = 0;
    std::vector<double> ts;  // empty: the default ladder
    std::uint64_t seed = 7;
    bool all_branches = false;
    bool pretty = false;
};

struct Result {
    nlohmann::ordered_json report;
    int code = ok;
};

Result analyze(const Presentation& P);
Result build(const Presentation& P, const Options& o, const Tolerances& tol);
Result cohomology(const Presentation& P, const Options& o, const Tolerances& tol);
Result deform(const Presentation& P, const Options& o, const Tolerances& tol);

// Loads the file, dispatches, and maps exceptions to exit codes.
Result run(const Options& o);
// Full command line; writes the report to out and diagnostics to err.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string pretty(const nlohmann::ordered_json& j);

}  // namespace knotrep::cli
