#include "sparsesel/verification.hpp"

#include "sparsesel/io.hpp"
#include "sparsesel/shk.hpp"
#include "sparsesel/sparse_solvers.hpp"
#include "sparsesel/synthetic.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace sparsesel {

LassoOracleResult lasso_oracle(const Matrix& y, const Vector& b, double gamma) {
    const auto cols = y.cols();
    if (cols > 16) throw std::invalid_argument("lasso_oracle: at most 16 columns");
    LassoOracleResult best;
    best.a = Vector::Zero(cols);
    best.objective = std::numeric_limits<double>::infinity();

    const Vector ytb = y.transpose() * b;
    const double kkt_slack = 1e-9 * std::max(1.0, gamma);

    for (std::uint32_t mask = 0; mask < (1U << cols); ++mask) {
        std::vector<Eigen::Index> sup;
        for (Eigen::Index j = 0; j < cols; ++j)
            if (mask & (1U << j)) sup.push_back(j);
        const auto k = static_cast<Eigen::Index>(sup.size());
        Matrix ys(y.rows(), k);
        for (Eigen::Index i = 0; i < k; ++i) ys.col(i) = y.col(sup[static_cast<std::size_t>(i)]);
        Eigen::FullPivLU<Matrix> lu(ys.transpose() * ys);
        if (k > 0 && !lu.isInvertible()) continue;

        for (std::uint32_t signs = 0; signs < (1U << k); ++signs) {
            ++best.patterns_checked;
            Vector s(k);
            for (Eigen::Index i = 0; i < k; ++i) s(i) = (signs & (1U << i)) ? -1.0 : 1.0;
            Vector rhs(k);
            for (Eigen::Index i = 0; i < k; ++i) rhs(i) = ytb(sup[static_cast<std::size_t>(i)]) - gamma * s(i);
            const Vector as = k > 0 ? Vector(lu.solve(rhs)) : Vector();
            bool valid = true;
            for (Eigen::Index i = 0; i < k && valid; ++i) valid = as(i) * s(i) > 0.0;
            if (!valid) continue;
            Vector a = Vector::Zero(cols);
            for (Eigen::Index i = 0; i < k; ++i) a(sup[static_cast<std::size_t>(i)]) = as(i);
            const Vector corr = y.transpose() * (b - y * a);
            for (Eigen::Index j = 0; j < cols && valid; ++j)
                if (!(mask & (1U << j))) valid = std::abs(corr(j)) <= gamma + kkt_slack;
            if (!valid) continue;
            const double obj = 0.5 * (y * a - b).squaredNorm() + gamma * a.lpNorm<1>();
            if (obj < best.objective) {
                best.objective = obj;
                best.a = a;
            }
        }
    }
    return best;
}

double SynthParams::effective_coherence() const {
    if (coherence) return *coherence;
    if (k == 0) return 0.3;
    return 1.0 / (2.0 * static_cast<double>(k) - 1.0);
}

namespace {

bool non_increasing(const std::vector<double>& seq, bool strict) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (strict ? !(seq[i] < seq[i - 1]) : seq[i] > seq[i - 1]) return false;
    }
    return true;
}

}  // namespace

SynthReport run_synthetic_verification(const SynthParams& params) {
    if (params.cols > 24 || params.oracle_max_support > 12)
        throw std::invalid_argument("synth: instance exceeds oracle limits (cols <= 24, max support <= 12)");
    if (params.k > params.oracle_max_support)
        throw std::invalid_argument("synth: k exceeds oracle max support");
    if (params.l1_cols > 16) throw std::invalid_argument("synth: l1 instances limited to 16 columns");

    SynthReport rep;
    SplitMix64 rng(params.seed);

    // Greedy recovery against the exhaustive l0 minimizer.
    for (std::size_t t = 0; t < params.instances; ++t) {
        ++rep.instances;
        Matrix y;
        Vector b;
        double tau = 0.0;
        StoppingRule stop;
        stop.max_atoms = params.oracle_max_support;
        if (params.k == 0) {
            y = incoherent_dictionary(rng, params.rows, params.cols, params.effective_coherence());
            b = gaussian_vector(rng, params.rows);
            tau = 1.01 * b.norm();
            stop.residual_threshold = b.norm();
        } else {
            PlantedInstance inst = planted_instance(rng, params.rows, params.cols, params.k,
                                                    params.effective_coherence());
            y = std::move(inst.y);
            b = std::move(inst.b);
            tau = 1e-3 * b.norm();
            stop.residual_threshold = 1e-6 * b.norm();
        }
        const SparseSolution oracle = oracle_l0(y, b, tau, params.oracle_max_support);
        const SparseSolution omp = solve_omp(y, b, stop);
        if (omp.support == oracle.support) ++rep.omp_agreements;
        if (non_increasing(omp.residual_history, true)) ++rep.omp_monotone;
    }

    // Proximal-gradient optimality against support enumeration.
    for (std::size_t t = 0; t < params.l1_instances; ++t) {
        ++rep.l1_instances;
        const Matrix y = gaussian_matrix(rng, params.l1_rows, params.l1_cols);
        const Vector b = gaussian_vector(rng, params.l1_rows);
        const double gmax = (y.transpose() * b).lpNorm<Eigen::Infinity>();
        const double gammas[3] = {0.1, 0.25 * gmax, 0.5 * gmax};
        const double gamma = gammas[t % 3];

        L1Config cfg;
        cfg.gamma = gamma;
        cfg.convergence_tol = 1e-12;
        cfg.max_iterations = 200000;
        const SparseSolution sol = solve_l1(y, b, cfg);
        const LassoOracleResult oracle = lasso_oracle(y, b, gamma);
        const double obj = l1_objective(y, b, sol.densify(static_cast<Index>(y.cols())), gamma);
        rep.l1_max_gap = std::max(rep.l1_max_gap, std::abs(obj - oracle.objective));
        if (non_increasing(sol.objective_history, false)) ++rep.l1_monotone;

        L1Config zero_cfg = cfg;
        zero_cfg.gamma = gmax;
        const SparseSolution z = solve_l1(y, b, zero_cfg);
        if (z.support.empty()) ++rep.l1_zero_threshold_ok;
    }

    // Sparse Ho-Kashyap on separable blobs.
    double iter_sum = 0.0;
    for (std::size_t t = 0; t < params.shk_instances; ++t) {
        ++rep.shk_instances;
        const LabeledPoints pts = separable_blobs(rng, 20, 6.0);
        const AugmentedFeatureMatrix y = augment_points(pts);
        ShkConfig cfg;
        cfg.inner_solver = InnerSolver::omp;
        cfg.stop.max_atoms = 3;
        const ShkResult res = run_shk(y, cfg);
        if (res.converged) ++rep.shk_converged;
        const Vector margins = y.matrix() * res.solution.densify(y.cols());
        if (margins.minCoeff() > 0.0) ++rep.shk_separating;
        bool monotone = true;
        const auto& its = res.trace.iterations;
        for (std::size_t i = 1; i < its.size(); ++i)
            monotone = monotone && (its[i].margin.array() >= its[i - 1].margin.array()).all();
        if (monotone) ++rep.shk_margin_monotone;
        iter_sum += static_cast<double>(its.size());
    }
    rep.shk_mean_iterations = rep.shk_instances ? iter_sum / static_cast<double>(rep.shk_instances) : 0.0;
    return rep;
}

void SynthReport::print(std::ostream& out) const {
    out << "omp_oracle_agreement=" << omp_agreements << "/" << instances
        << " omp_residual_strictly_decreasing=" << omp_monotone << "/" << instances << "\n";
    out << "l1_max_objective_gap=" << format_double(l1_max_gap) << " l1_zero_threshold=" << l1_zero_threshold_ok
        << "/" << l1_instances << " l1_objective_monotone=" << l1_monotone << "/" << l1_instances << "\n";
    out << "shk_converged=" << shk_converged << "/" << shk_instances << " shk_separating=" << shk_separating << "/"
        << shk_instances << " shk_margin_monotone=" << shk_margin_monotone << "/" << shk_instances
        << " shk_mean_iterations=" << format_double(shk_mean_iterations) << "\n";
    out << "status=" << (passed() ? "pass" : "fail") << "\n";
}

}  // namespace sparsesel
