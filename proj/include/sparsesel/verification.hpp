#pragma once

// Independent cross-checks for the solvers on small synthetic instances.

#include "sparsesel/core_types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace sparsesel {

struct LassoOracleResult {
    Vector a;
    double objective = 0.0;
    std::size_t patterns_checked = 0;
};

/// Minimizer of 1/2||Ya-b||^2 + gamma||a||_1 by enumerating every support
/// and sign pattern, solving the restricted stationarity system
/// Y_S^T Y_S a_S = Y_S^T b - gamma s, and keeping patterns that satisfy the
/// sign and off-support optimality conditions. Limited to 16 columns.
LassoOracleResult lasso_oracle(const Matrix& y, const Vector& b, double gamma);

struct SynthParams {
    std::uint64_t seed = 42;
    std::size_t instances = 100;
    Index rows = 20;
    Index cols = 15;
    Index k = 3;
    std::optional<double> coherence;  // default 1 / (2k - 1)
    std::size_t oracle_max_support = 4;

    std::size_t l1_instances = 50;
    Index l1_rows = 12;
    Index l1_cols = 8;

    std::size_t shk_instances = 10;

    double effective_coherence() const;
};

struct SynthReport {
    std::size_t instances = 0;
    std::size_t omp_agreements = 0;
    std::size_t omp_monotone = 0;

    std::size_t l1_instances = 0;
    double l1_max_gap = 0.0;
    std::size_t l1_zero_threshold_ok = 0;
    std::size_t l1_monotone = 0;

    std::size_t shk_instances = 0;
    std::size_t shk_converged = 0;
    std::size_t shk_separating = 0;
    std::size_t shk_margin_monotone = 0;
    double shk_mean_iterations = 0.0;

    bool omp_passed() const { return omp_agreements == instances && omp_monotone == instances; }
    bool l1_passed() const {
        return l1_max_gap <= 1e-6 && l1_zero_threshold_ok == l1_instances && l1_monotone == l1_instances;
    }
    bool shk_passed() const {
        return shk_separating == shk_instances && shk_margin_monotone == shk_instances;
    }
    bool passed() const { return omp_passed() && l1_passed() && shk_passed(); }

    void print(std::ostream& out) const;
};

SynthReport run_synthetic_verification(const SynthParams& params);

}  // namespace sparsesel
