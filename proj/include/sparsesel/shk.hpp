#pragma once

// Margin presets and the sparse Ho-Kashyap procedure.
//
// Each outer iteration t solves the sparse approximation problem for the
// current margin b(t), forms e(t) = Y a(t) - b(t), and raises the margin by
// b(t+1) = b(t) + 2 eta(t) e+(t) with eta(t) = eta1 / t. Margins never
// decrease. The loop ends when ||b(t+1) - b(t)||_2 < epsilon.

#include "sparsesel/core_types.hpp"
#include "sparsesel/sparse_solvers.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sparsesel {

enum class MarginKind { ssmes, sfisher, uniform };

struct MarginPreset {
    MarginKind kind = MarginKind::uniform;
    double initial_margin = 1.0;  // used by `uniform`
};

/// ssmes: all ones; sfisher: n_c / n for a sample of class c; uniform: initial_margin.
MarginVector make_margin(const MarginPreset& preset, const std::vector<int>& labels);

/// Columns the preset keeps out of the support ({0} for ssmes, which pins the bias to zero).
ColumnSet preset_excluded_columns(MarginKind kind);

/// Elementwise 1/2 (e + |e|).
Vector positive_part(const Vector& e);

/// b + 2 eta e+.
MarginVector margin_update(const MarginVector& b, const Vector& e, double eta);

enum class InnerSolver { mp, omp, l1, dense };

struct ShkConfig {
    double eta1 = 0.5;
    double epsilon = 1e-4;
    std::size_t max_outer_iterations = 200;
    double initial_margin = 1.0;
    // Overrides the uniform b(0) when set (e.g. a class-ratio margin).
    std::optional<Vector> initial_margin_vector;
    InnerSolver inner_solver = InnerSolver::omp;
    StoppingRule stop;
    L1Config l1;
    ColumnSet excluded;

    void validate() const;
};

struct ShkIteration {
    std::size_t t = 0;
    double margin_norm = 0.0;    // ||b(t)||
    double residual_norm = 0.0;  // ||e(t)||
    double eplus_norm = 0.0;     // ||e+(t)||
    std::size_t support_size = 0;
    double eta = 0.0;
    Vector margin;  // b(t)
};

struct ShkTrace {
    std::vector<ShkIteration> iterations;

    /// CSV with header t,margin_norm,residual_norm,eplus_norm,support_size.
    void write_csv(std::ostream& out) const;
};

struct ShkResult {
    SparseSolution solution;
    MarginVector margin;
    ShkTrace trace;
    bool converged = false;
};

/// Runs one inner sparse solve for target b.
SparseSolution inner_solve(const Matrix& y, const Vector& b, const ShkConfig& cfg);

ShkResult run_shk(const AugmentedFeatureMatrix& y, const ShkConfig& cfg);

std::string to_string(InnerSolver s);
std::string to_string(MarginKind k);
InnerSolver parse_inner_solver(const std::string& s);
MarginKind parse_margin_kind(const std::string& s);

}  // namespace sparsesel
