#pragma once

// Sparse approximation of Ya ~ b.
//
//   solve_mp / solve_omp  greedy pursuit for  min ||Ya-b||^2 + tau^2 ||a||_0
//   solve_l1              proximal gradient for min 1/2||Ya-b||^2 + gamma ||a||_1
//   oracle_l0             exhaustive enumeration of the l0 problem (small instances)
//
// The core overloads take a plain matrix and right-hand side so that the same
// solvers serve synthetic instances whose targets are not margin vectors.
// Y is never normalized; column norms enter only the greedy selection score.

#include "sparsesel/core_types.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace sparsesel {

class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StoppingRule {
    static constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

    double residual_threshold = 0.0;  // halt once ||r||_2 <= threshold
    std::size_t max_atoms = unlimited;  // halt once this many distinct columns are selected
    // Plain MP may revisit atoms; this caps its total number of updates.
    std::size_t max_mp_iterations = 10000;

    void validate() const;
};

struct L1Config {
    double gamma = 0.0;
    std::size_t max_iterations = 100000;
    double convergence_tol = 1e-10;
    std::optional<double> step_size;  // nullopt: 1/L from power iteration

    void validate() const;
};

/// Column indices that may not enter the support (e.g. {0} to pin the bias to zero).
using ColumnSet = std::vector<Index>;

SparseSolution solve_mp(const Matrix& y, const Vector& b, const StoppingRule& stop,
                        const ColumnSet& excluded = {});
SparseSolution solve_omp(const Matrix& y, const Vector& b, const StoppingRule& stop,
                         const ColumnSet& excluded = {});
SparseSolution solve_l1(const Matrix& y, const Vector& b, const L1Config& cfg,
                        const ColumnSet& excluded = {});
SparseSolution oracle_l0(const Matrix& y, const Vector& b, double tau, std::size_t max_support);

SparseSolution solve_mp(const AugmentedFeatureMatrix& y, const MarginVector& b,
                        const StoppingRule& stop, const ColumnSet& excluded = {});
SparseSolution solve_omp(const AugmentedFeatureMatrix& y, const MarginVector& b,
                         const StoppingRule& stop, const ColumnSet& excluded = {});
SparseSolution solve_l1(const AugmentedFeatureMatrix& y, const MarginVector& b,
                        const L1Config& cfg, const ColumnSet& excluded = {});
SparseSolution oracle_l0(const AugmentedFeatureMatrix& y, const MarginVector& b, double tau,
                         std::size_t max_support);

/// Unconstrained least squares over all non-excluded columns (the classical
/// Ho-Kashyap weight step). Support holds every candidate column.
SparseSolution solve_dense(const Matrix& y, const Vector& b, const ColumnSet& excluded = {});

// Helpers exposed for tests and the verification harness.

double soft_threshold(double x, double level);

/// 1/2||Ya-b||^2 + gamma||a||_1
double l1_objective(const Matrix& y, const Vector& b, const Vector& a, double gamma);

/// Power-iteration estimate of the largest eigenvalue of Y^T Y (30 iterations
/// from a fixed start vector).
double largest_gram_eigenvalue(const Matrix& y, int iterations = 30);

/// Max |<ci, cj>| over distinct unit-normalized columns.
double mutual_coherence(const Matrix& y);

/// Least squares restricted to `support`; nullopt if the columns are rank deficient.
std::optional<Vector> restricted_least_squares(const Matrix& y, const Vector& b,
                                               const std::vector<Index>& support);

}  // namespace sparsesel
