#include "sparsesel/shk.hpp"

#include "sparsesel/io.hpp"

#include <cmath>
#include <map>
#include <ostream>

namespace sparsesel {

MarginVector make_margin(const MarginPreset& preset, const std::vector<int>& labels) {
    if (labels.empty()) throw std::invalid_argument("make_margin: no labels");
    const auto n = static_cast<Eigen::Index>(labels.size());
    switch (preset.kind) {
    case MarginKind::ssmes:
        return MarginVector(Vector::Ones(n));
    case MarginKind::uniform:
        return MarginVector(Vector::Constant(n, preset.initial_margin));
    case MarginKind::sfisher: {
        std::map<int, std::size_t> counts;
        for (int c : labels) ++counts[c];
        Vector b(n);
        for (Eigen::Index i = 0; i < n; ++i)
            b(i) = static_cast<double>(counts[labels[static_cast<std::size_t>(i)]]) / static_cast<double>(n);
        return MarginVector(std::move(b));
    }
    }
    throw std::invalid_argument("make_margin: unknown preset");
}

ColumnSet preset_excluded_columns(MarginKind kind) {
    if (kind == MarginKind::ssmes) return {0};
    return {};
}

Vector positive_part(const Vector& e) {
    return 0.5 * (e + e.cwiseAbs());
}

MarginVector margin_update(const MarginVector& b, const Vector& e, double eta) {
    require_dim(static_cast<Index>(e.size()), b.size(), "margin_update: error vector");
    if (!(eta > 0.0)) throw std::invalid_argument("margin_update: learn rate must be positive");
    return MarginVector(b.values() + 2.0 * eta * positive_part(e));
}

void ShkConfig::validate() const {
    if (!(eta1 > 0.0 && eta1 < 1.0)) throw std::invalid_argument("ShkConfig: eta1 must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("ShkConfig: epsilon must be > 0");
    if (max_outer_iterations == 0) throw std::invalid_argument("ShkConfig: max_outer_iterations must be positive");
    if (!(initial_margin > 0.0)) throw std::invalid_argument("ShkConfig: initial_margin must be > 0");
}

SparseSolution inner_solve(const Matrix& y, const Vector& b, const ShkConfig& cfg) {
    switch (cfg.inner_solver) {
    case InnerSolver::mp: return solve_mp(y, b, cfg.stop, cfg.excluded);
    case InnerSolver::omp: return solve_omp(y, b, cfg.stop, cfg.excluded);
    case InnerSolver::l1: return solve_l1(y, b, cfg.l1, cfg.excluded);
    case InnerSolver::dense: return solve_dense(y, b, cfg.excluded);
    }
    throw std::invalid_argument("unknown inner solver");
}

ShkResult run_shk(const AugmentedFeatureMatrix& y, const ShkConfig& cfg) {
    cfg.validate();
    const Matrix& ym = y.matrix();
    const auto n = static_cast<Eigen::Index>(y.rows());

    MarginVector b = cfg.initial_margin_vector ? MarginVector(*cfg.initial_margin_vector)
                                               : MarginVector(Vector::Constant(n, cfg.initial_margin));
    require_dim(b.size(), y.rows(), "run_shk: initial margin");

    ShkResult result{SparseSolution{}, b, ShkTrace{}, false};
    for (std::size_t t = 1; t <= cfg.max_outer_iterations; ++t) {
        SparseSolution a;
        try {
            a = inner_solve(ym, b.values(), cfg);
        } catch (const std::exception& ex) {
            throw solver_error("SHK outer iteration " + std::to_string(t) + ": " + ex.what());
        }
        const Vector e = ym * a.densify(y.cols()) - b.values();
        const double eta = cfg.eta1 / static_cast<double>(t);
        MarginVector next = margin_update(b, e, eta);
        const double delta = (next.values() - b.values()).norm();

        result.trace.iterations.push_back(
            ShkIteration{t, b.values().norm(), e.norm(), positive_part(e).norm(), a.support.size(), eta, b.values()});
        result.solution = std::move(a);
        b = std::move(next);
        if (delta < cfg.epsilon) {
            result.converged = true;
            break;
        }
    }
    result.margin = b;
    return result;
}

void ShkTrace::write_csv(std::ostream& out) const {
    out << "t,margin_norm,residual_norm,eplus_norm,support_size\n";
    for (const auto& it : iterations) {
        out << it.t << ',' << format_double(it.margin_norm) << ',' << format_double(it.residual_norm) << ','
            << format_double(it.eplus_norm) << ',' << it.support_size << '\n';
    }
}

std::string to_string(InnerSolver s) {
    switch (s) {
    case InnerSolver::mp: return "mp";
    case InnerSolver::omp: return "omp";
    case InnerSolver::l1: return "l1";
    case InnerSolver::dense: return "dense";
    }
    return "?";
}

std::string to_string(MarginKind k) {
    switch (k) {
    case MarginKind::ssmes: return "ssmes";
    case MarginKind::sfisher: return "sfisher";
    case MarginKind::uniform: return "uniform";
    }
    return "?";
}

InnerSolver parse_inner_solver(const std::string& s) {
    if (s == "mp") return InnerSolver::mp;
    if (s == "omp") return InnerSolver::omp;
    if (s == "l1") return InnerSolver::l1;
    if (s == "dense") return InnerSolver::dense;
    throw std::invalid_argument("unknown solver '" + s + "'");
}

MarginKind parse_margin_kind(const std::string& s) {
    if (s == "ssmes") return MarginKind::ssmes;
    if (s == "sfisher") return MarginKind::sfisher;
    if (s == "uniform") return MarginKind::uniform;
    throw std::invalid_argument("unknown margin preset '" + s + "'");
}

}  // namespace sparsesel
