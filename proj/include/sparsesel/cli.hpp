#pragma once

// Subcommands of the `sparsesel` tool. Each returns a process exit code and
// writes human-readable output to `out`, diagnostics to `err`.

#include "sparsesel/verification.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace sparsesel::cli {

struct ExtractOptions {
    std::string manifest;   // CSV path,subject; relative paths resolve against its directory
    std::string image_dir;  // alternative: every *.pgm, subject = file stem up to the first '_'
    std::string out;
    bool continue_on_error = false;
};

struct PairsOptions {
    std::string features;
    std::string ratio = "1:7";
    std::uint64_t seed = 42;
    std::string out;
};

struct SelectOptions {
    std::string pairs;     // SPPM file, or:
    std::string features;  // archive to build pairs from
    std::string ratio = "1:7";
    std::uint64_t seed = 42;
    std::string method = "shk";
    std::string solver = "omp";
    std::size_t max_atoms = 500;
    double residual_threshold = 0.0;
    std::optional<double> gamma;
    std::size_t l1_max_iterations = 100000;
    double l1_tol = 1e-10;
    double eta1 = 0.5;
    double epsilon = 1e-4;
    std::size_t max_outer = 200;
    double initial_margin = 1.0;
    std::string shk_init = "uniform";  // uniform | sfisher
    std::string trace;                 // optional SHK trace CSV
    std::string out;
};

struct EvalOptions {
    std::string model;
    std::string gallery;
    std::string probe;
    std::string classifier = "nnc";  // nnc | mmc | fc
    std::string distance = "l1";
    std::string predictions;
};

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err);
int cmd_pairs(const PairsOptions& opt, std::ostream& out, std::ostream& err);
int cmd_select(const SelectOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthParams& params, const std::string& report, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sparsesel::cli
