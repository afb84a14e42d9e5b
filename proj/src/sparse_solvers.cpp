#include "sparsesel/sparse_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sparsesel {

namespace {

// Correlation scores equal within this relative tolerance are ties; the
// lowest column index wins.
constexpr double kTieTolerance = 1e-12;
// A best score below this fraction of ||b|| means no atom improves the fit.
constexpr double kNoImprovement = 1e-12;
// Squared Cholesky pivot relative to ||c||^2 below which a column is treated
// as linearly dependent on the current support.
constexpr double kRankTolerance = 1e-12;
constexpr double kPruneLevel = 1e-12;

struct Candidates {
    std::vector<bool> allowed;
    Vector norms;
};

Candidates make_candidates(const Matrix& y, const ColumnSet& excluded) {
    Candidates c;
    const auto cols = static_cast<Index>(y.cols());
    c.allowed.assign(cols, true);
    for (Index j : excluded) {
        if (j >= cols)
            throw dimension_error("excluded column " + std::to_string(j) + " out of range");
        c.allowed[j] = false;
    }
    if (std::none_of(c.allowed.begin(), c.allowed.end(), [](bool v) { return v; }))
        throw solver_error("empty candidate set: every column is excluded");
    c.norms = y.colwise().norm().transpose();
    for (Index j = 0; j < cols; ++j) {
        if (c.allowed[j] && !(c.norms(static_cast<Eigen::Index>(j)) > 0.0))
            throw solver_error("candidate column " + std::to_string(j) + " has zero norm");
    }
    return c;
}

struct Pick {
    Index column;
    double score;       // |<c, r>| / ||c||
    double correlation; // <c, r>
};

// Sequential fixed-order scan so the result never depends on evaluation order.
std::optional<Pick> best_atom(const Vector& corr, const Candidates& cand,
                              const std::vector<bool>* skip = nullptr) {
    std::optional<Pick> best;
    for (Eigen::Index j = 0; j < corr.size(); ++j) {
        const auto uj = static_cast<Index>(j);
        if (!cand.allowed[uj] || (skip && (*skip)[uj])) continue;
        const double score = std::abs(corr(j)) / cand.norms(j);
        if (!best || score > best->score * (1.0 + kTieTolerance)) best = Pick{uj, score, corr(j)};
    }
    return best;
}

void check_shapes(const Matrix& y, const Vector& b) {
    if (y.rows() < 1 || y.cols() < 1) throw dimension_error("empty design matrix");
    require_dim(static_cast<Index>(b.size()), static_cast<Index>(y.rows()), "right-hand side");
}

// Sorts support ascending (carrying coefficients) and recomputes the residual
// norm from the dense vector.
void finalize(SparseSolution& s, const Matrix& y, const Vector& b) {
    std::vector<std::size_t> order(s.support.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return s.support[l] < s.support[r]; });
    std::vector<Index> sup;
    std::vector<double> coef;
    for (auto k : order) {
        sup.push_back(s.support[k]);
        coef.push_back(s.coefficients[k]);
    }
    s.support = std::move(sup);
    s.coefficients = std::move(coef);
    s.residual_norm = (y * s.densify(static_cast<Index>(y.cols())) - b).norm();
}

bool should_stop(double rnorm, std::size_t atoms, const StoppingRule& stop) {
    return rnorm <= stop.residual_threshold || atoms >= stop.max_atoms;
}

Matrix gather_columns(const Matrix& y, const std::vector<Index>& cols) {
    Matrix out(y.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = y.col(static_cast<Eigen::Index>(cols[k]));
    return out;
}

}  // namespace

void StoppingRule::validate() const {
    if (!(residual_threshold >= 0.0) || !std::isfinite(residual_threshold))
        throw std::invalid_argument("StoppingRule: residual_threshold must be finite and >= 0");
    if (max_atoms == 0) throw std::invalid_argument("StoppingRule: max_atoms must be positive");
    if (residual_threshold == 0.0 && max_atoms == unlimited)
        throw std::invalid_argument("StoppingRule: at least one stopping criterion must be active");
    if (max_mp_iterations == 0)
        throw std::invalid_argument("StoppingRule: max_mp_iterations must be positive");
}

void L1Config::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("L1Config: gamma must be > 0");
    if (!(convergence_tol > 0.0)) throw std::invalid_argument("L1Config: convergence_tol must be > 0");
    if (max_iterations == 0) throw std::invalid_argument("L1Config: max_iterations must be positive");
    if (step_size && !(*step_size > 0.0)) throw std::invalid_argument("L1Config: step_size must be > 0");
}

double soft_threshold(double x, double level) {
    if (x > level) return x - level;
    if (x < -level) return x + level;
    return 0.0;
}

double l1_objective(const Matrix& y, const Vector& b, const Vector& a, double gamma) {
    return 0.5 * (y * a - b).squaredNorm() + gamma * a.lpNorm<1>();
}

double largest_gram_eigenvalue(const Matrix& y, int iterations) {
    Vector v = Vector::Ones(y.cols()) / std::sqrt(static_cast<double>(y.cols()));
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector w = y.transpose() * (y * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        lambda = v.dot(w);
        v = w / nw;
    }
    // Rayleigh quotient of the last iterate.
    return std::max(lambda, (y * v).squaredNorm());
}

double mutual_coherence(const Matrix& y) {
    Matrix u = y;
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        const double n = u.col(j).norm();
        if (n > 0.0) u.col(j) /= n;
    }
    const Matrix g = u.transpose() * u;
    double mu = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = i + 1; j < g.cols(); ++j) mu = std::max(mu, std::abs(g(i, j)));
    return mu;
}

std::optional<Vector> restricted_least_squares(const Matrix& y, const Vector& b,
                                               const std::vector<Index>& support) {
    if (support.empty()) return Vector();
    const Matrix ys = gather_columns(y, support);
    const Matrix gram = ys.transpose() * ys;
    Eigen::LLT<Matrix> llt(gram);
    if (llt.info() != Eigen::Success) return std::nullopt;
    const Matrix& l = llt.matrixLLT();
    for (Eigen::Index k = 0; k < l.rows(); ++k) {
        if (l(k, k) * l(k, k) <= kRankTolerance * gram(k, k)) return std::nullopt;
    }
    Vector x = llt.solve(ys.transpose() * b);
    x += llt.solve(ys.transpose() * (b - ys * x));
    return x;
}

SparseSolution solve_mp(const Matrix& y, const Vector& b, const StoppingRule& stop,
                        const ColumnSet& excluded) {
    check_shapes(y, b);
    stop.validate();
    const Candidates cand = make_candidates(y, excluded);

    const auto cols = static_cast<Index>(y.cols());
    Vector a = Vector::Zero(y.cols());
    Vector r = b;
    std::vector<bool> in_support(cols, false);
    std::size_t distinct = 0;

    SparseSolution s;
    double rnorm = r.norm();
    s.residual_history.push_back(rnorm);
    const double floor = kNoImprovement * b.norm();

    while (s.iterations < stop.max_mp_iterations && !should_stop(rnorm, distinct, stop)) {
        const Vector corr = y.transpose() * r;
        const auto pick = best_atom(corr, cand);
        if (!pick || pick->score <= floor) break;
        if (!in_support[pick->column] && distinct >= stop.max_atoms) break;
        const auto j = static_cast<Eigen::Index>(pick->column);
        const double step = pick->correlation / (cand.norms(j) * cand.norms(j));
        const Vector r_new = r - step * y.col(j);
        const double rnorm_new = r_new.norm();
        if (rnorm_new > rnorm) break;  // round-off level; further updates cannot help
        a(j) += step;
        r = r_new;
        if (!in_support[pick->column]) {
            in_support[pick->column] = true;
            ++distinct;
        }
        ++s.iterations;
        rnorm = rnorm_new;
        s.residual_history.push_back(rnorm);
    }
    s.converged = s.iterations < stop.max_mp_iterations || should_stop(rnorm, distinct, stop);

    SparseSolution sp = sparsify(a);
    s.support = std::move(sp.support);
    s.coefficients = std::move(sp.coefficients);
    finalize(s, y, b);
    return s;
}

SparseSolution solve_omp(const Matrix& y, const Vector& b, const StoppingRule& stop,
                         const ColumnSet& excluded) {
    check_shapes(y, b);
    stop.validate();
    const Candidates cand = make_candidates(y, excluded);

    const auto cols = static_cast<Index>(y.cols());
    std::vector<bool> selected(cols, false);
    std::vector<Index> order;  // selection order
    Vector coef;
    Vector r = b;

    SparseSolution s;
    double rnorm = r.norm();
    s.residual_history.push_back(rnorm);
    const double floor = kNoImprovement * b.norm();

    while (!should_stop(rnorm, order.size(), stop)) {
        const Vector corr = y.transpose() * r;
        const auto pick = best_atom(corr, cand, &selected);
        if (!pick || pick->score <= floor) break;

        std::vector<Index> trial = order;
        trial.push_back(pick->column);
        const Matrix ys = gather_columns(y, trial);
        const Matrix gram = ys.transpose() * ys;
        Eigen::LLT<Matrix> llt(gram);
        const auto last = static_cast<Eigen::Index>(trial.size()) - 1;
        const double pivot = llt.info() == Eigen::Success ? llt.matrixLLT()(last, last) : 0.0;
        if (!(pivot * pivot > kRankTolerance * gram(last, last)))
            throw solver_error("OMP: atom " + std::to_string(pick->column) +
                               " is linearly dependent on the current support");

        Vector x = llt.solve(ys.transpose() * b);
        x += llt.solve(ys.transpose() * (b - ys * x));  // one refinement step
        const Vector r_new = b - ys * x;
        const double rnorm_new = r_new.norm();
        if (!(rnorm_new < rnorm)) break;  // no strict progress; keep the previous fit

        order = std::move(trial);
        selected[pick->column] = true;
        coef = std::move(x);
        r = r_new;
        rnorm = rnorm_new;
        ++s.iterations;
        s.residual_history.push_back(rnorm);
    }

    s.support = order;
    s.coefficients.assign(coef.data(), coef.data() + coef.size());
    finalize(s, y, b);
    return s;
}

SparseSolution solve_l1(const Matrix& y, const Vector& b, const L1Config& cfg,
                        const ColumnSet& excluded) {
    check_shapes(y, b);
    cfg.validate();
    const auto cols = static_cast<Index>(y.cols());
    std::vector<bool> allowed(cols, true);
    for (Index j : excluded) {
        if (j >= cols) throw dimension_error("excluded column " + std::to_string(j) + " out of range");
        allowed[j] = false;
    }
    std::vector<Index> active;
    for (Index j = 0; j < cols; ++j)
        if (allowed[j]) active.push_back(j);
    if (active.empty()) throw solver_error("empty candidate set: every column is excluded");

    const Matrix ya = gather_columns(y, active);
    double step = 0.0;
    if (cfg.step_size) {
        step = *cfg.step_size;
    } else {
        const double lipschitz = 1.01 * largest_gram_eigenvalue(ya, 30);
        if (!(lipschitz > 0.0)) throw solver_error("l1: design matrix is identically zero");
        step = 1.0 / lipschitz;
    }

    SparseSolution s;
    Vector x = Vector::Zero(ya.cols());
    double obj = l1_objective(ya, b, x, cfg.gamma);
    const double zero_obj = obj;
    s.objective_history.push_back(obj);
    s.converged = false;

    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        const Vector grad = ya.transpose() * (ya * x - b);
        Vector next(x.size());
        double next_obj = 0.0;
        // The power-iteration bound can undershoot; halve the step until the
        // objective does not increase.
        double trial = step;
        for (int backtrack = 0;; ++backtrack) {
            for (Eigen::Index j = 0; j < x.size(); ++j)
                next(j) = soft_threshold(x(j) - trial * grad(j), trial * cfg.gamma);
            next_obj = l1_objective(ya, b, next, cfg.gamma);
            if (next_obj <= obj || backtrack >= 60) break;
            trial *= 0.5;
        }
        ++s.iterations;
        double change = 0.0;
        if (next_obj <= obj) {
            change = (next - x).norm();
            x = std::move(next);
            obj = next_obj;
        }
        s.objective_history.push_back(obj);
        if (change < cfg.convergence_tol) {
            s.converged = true;
            break;
        }
    }

    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (std::abs(x(j)) < kPruneLevel) x(j) = 0.0;
    if (l1_objective(ya, b, x, cfg.gamma) > zero_obj) x.setZero();

    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (x(j) != 0.0) {
            s.support.push_back(active[static_cast<std::size_t>(j)]);
            s.coefficients.push_back(x(j));
        }
    }
    finalize(s, y, b);
    return s;
}

SparseSolution solve_dense(const Matrix& y, const Vector& b, const ColumnSet& excluded) {
    check_shapes(y, b);
    const auto cols = static_cast<Index>(y.cols());
    std::vector<bool> allowed(cols, true);
    for (Index j : excluded) {
        if (j >= cols) throw dimension_error("excluded column " + std::to_string(j) + " out of range");
        allowed[j] = false;
    }
    std::vector<Index> active;
    for (Index j = 0; j < cols; ++j)
        if (allowed[j]) active.push_back(j);
    if (active.empty()) throw solver_error("empty candidate set: every column is excluded");

    const Matrix ya = gather_columns(y, active);
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(ya);
    const Vector x = cod.solve(b);

    SparseSolution s;
    s.iterations = 1;
    s.support = active;
    s.coefficients.assign(x.data(), x.data() + x.size());
    finalize(s, y, b);
    s.residual_history = {b.norm(), s.residual_norm};
    return s;
}

SparseSolution oracle_l0(const Matrix& y, const Vector& b, double tau, std::size_t max_support) {
    check_shapes(y, b);
    if (y.cols() > 24 || max_support > 12)
        throw std::invalid_argument("oracle_l0: requires at most 24 columns and max_support <= 12 (got " +
                                    std::to_string(y.cols()) + " columns, max_support " +
                                    std::to_string(max_support) + ")");
    if (!(tau > 0.0)) throw std::invalid_argument("oracle_l0: tau must be > 0");

    const auto cols = static_cast<Index>(y.cols());
    const double tau2 = tau * tau;

    std::vector<Index> best_support;
    Vector best_coef;
    double best_obj = b.squaredNorm();  // empty support

    std::vector<Index> sup;
    const std::size_t kmax = std::min<std::size_t>(max_support, cols);
    for (std::size_t k = 1; k <= kmax; ++k) {
        sup.resize(k);
        std::iota(sup.begin(), sup.end(), Index{0});
        while (true) {
            if (auto x = restricted_least_squares(y, b, sup)) {
                const Vector r = b - gather_columns(y, sup) * *x;
                const double obj = r.squaredNorm() + tau2 * static_cast<double>(k);
                const double tol = 1e-12 * std::max(1.0, best_obj);
                const bool better = obj < best_obj - tol;
                const bool tie = !better && std::abs(obj - best_obj) <= tol &&
                                 std::lexicographical_compare(sup.begin(), sup.end(),
                                                              best_support.begin(), best_support.end());
                if (better || tie) {
                    if (better) best_obj = obj;
                    best_support = sup;
                    best_coef = *x;
                }
            }
            // Next combination in lexicographic order.
            std::size_t i = k;
            while (i > 0 && sup[i - 1] == cols - k + (i - 1)) --i;
            if (i == 0) break;
            ++sup[i - 1];
            for (std::size_t m = i; m < k; ++m) sup[m] = sup[m - 1] + 1;
        }
    }

    SparseSolution s;
    s.support = best_support;
    s.coefficients.assign(best_coef.data(), best_coef.data() + best_coef.size());
    s.iterations = best_support.size();
    finalize(s, y, b);
    return s;
}

SparseSolution solve_mp(const AugmentedFeatureMatrix& y, const MarginVector& b,
                        const StoppingRule& stop, const ColumnSet& excluded) {
    return solve_mp(y.matrix(), b.values(), stop, excluded);
}

SparseSolution solve_omp(const AugmentedFeatureMatrix& y, const MarginVector& b,
                         const StoppingRule& stop, const ColumnSet& excluded) {
    return solve_omp(y.matrix(), b.values(), stop, excluded);
}

SparseSolution solve_l1(const AugmentedFeatureMatrix& y, const MarginVector& b, const L1Config& cfg,
                        const ColumnSet& excluded) {
    return solve_l1(y.matrix(), b.values(), cfg, excluded);
}

SparseSolution oracle_l0(const AugmentedFeatureMatrix& y, const MarginVector& b, double tau,
                         std::size_t max_support) {
    return oracle_l0(y.matrix(), b.values(), tau, max_support);
}

}  // namespace sparsesel
