#include "sparsesel/cli.hpp"

#include "common.hpp"
#include "pipeline.hpp"
#include "sparsesel/classifiers.hpp"
#include "sparsesel/model_io.hpp"
#include "sparsesel/rng.hpp"
#include "sparsesel/shk.hpp"

#include <filesystem>
#include <fstream>

namespace sparsesel::cli {

int cmd_select(const SelectOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.pairs.empty() == opt.features.empty())
        throw std::invalid_argument("select: give exactly one of --pairs or --features");
    const SelectionMethod method = parse_selection_method(opt.method);
    const SelectionSolver solver = parse_selection_solver(opt.solver);
    if (solver == SelectionSolver::l1 && !opt.gamma) throw std::invalid_argument("select: --gamma is required for l1");
    if (opt.shk_init != "uniform" && opt.shk_init != "sfisher")
        throw std::invalid_argument("select: --shk-init must be uniform or sfisher");

    SamplingPolicy policy{SamplingRatio::parse(opt.ratio), opt.seed, true};
    // A pair file produced by `pairs` carries its sampling parameters alongside.
    if (!opt.pairs.empty() && std::filesystem::exists(opt.pairs + ".config.json")) {
        std::ifstream f(opt.pairs + ".config.json");
        const auto cfg = nlohmann::json::parse(f);
        policy.seed = cfg.at("seed").get<std::uint64_t>();
        policy.ratio = SamplingRatio::parse(cfg.at("ratio").get<std::string>());
    }
    policy.validate();

    ShkConfig cfg;
    cfg.inner_solver = parse_inner_solver(opt.solver);
    cfg.stop.max_atoms = opt.max_atoms;
    cfg.stop.residual_threshold = opt.residual_threshold;
    cfg.l1.gamma = opt.gamma.value_or(1.0);
    cfg.l1.max_iterations = opt.l1_max_iterations;
    cfg.l1.convergence_tol = opt.l1_tol;
    cfg.eta1 = opt.eta1;
    cfg.epsilon = opt.epsilon;
    cfg.max_outer_iterations = opt.max_outer;
    cfg.initial_margin = opt.initial_margin;

    nlohmann::json config = {{"command", "select"},
                             {"pairs", opt.pairs},
                             {"features", opt.features},
                             {"ratio", policy.ratio.to_string()},
                             {"seed", policy.seed},
                             {"rng", SplitMix64::name},
                             {"method", opt.method},
                             {"solver", opt.solver},
                             {"max_atoms", opt.max_atoms},
                             {"residual_threshold", opt.residual_threshold},
                             {"out", opt.out}};
    if (solver == SelectionSolver::l1) {
        config["gamma"] = *opt.gamma;
        config["l1_max_iterations"] = opt.l1_max_iterations;
        config["l1_tol"] = opt.l1_tol;
        config["l1_step"] = "1/(1.01*power_iteration_30)";
    }
    if (method == SelectionMethod::shk) {
        config["eta1"] = opt.eta1;
        config["epsilon"] = opt.epsilon;
        config["max_outer"] = opt.max_outer;
        config["initial_margin"] = opt.initial_margin;
        config["shk_init"] = opt.shk_init;
        config["trace"] = opt.trace;
    }
    emit_config(config, opt.out, out);

    PairMatrix pm;
    if (!opt.pairs.empty()) {
        pm = PairMatrix::read(opt.pairs);
    } else {
        pm = sample_pairs(FeatureArchive::read(opt.features), policy, err).matrix;
    }
    const AugmentedFeatureMatrix y(pm.y);
    std::vector<int> labels(pm.labels.begin(), pm.labels.end());

    SparseSolution solution;
    std::size_t outer = 0;
    bool converged = true;
    if (method == SelectionMethod::shk) {
        if (opt.shk_init == "sfisher")
            cfg.initial_margin_vector = make_margin({MarginKind::sfisher, 1.0}, labels).values();
        ShkResult res = run_shk(y, cfg);
        solution = std::move(res.solution);
        outer = res.trace.iterations.size();
        converged = res.converged;
        if (!opt.trace.empty()) {
            std::ofstream t(opt.trace, std::ios::binary);
            if (!t) throw std::runtime_error("cannot write " + opt.trace);
            res.trace.write_csv(t);
        }
    } else {
        const MarginKind kind = method == SelectionMethod::ssmes ? MarginKind::ssmes : MarginKind::sfisher;
        cfg.excluded = preset_excluded_columns(kind);
        const MarginVector b = make_margin({kind, 1.0}, labels);
        solution = inner_solve(y.matrix(), b.values(), cfg);
        converged = solution.converged;
    }

    Provenance prov{policy.seed, policy.ratio.intra, policy.ratio.extra, digest_pair_matrix(y.matrix(), labels)};
    const SelectionModel model = SelectionModel::from_solution(solution, y.feature_dim(), method, solver, prov);
    write_model(opt.out, model);

    out << "support=" << solution.support.size() << " features=" << model.support.size()
        << " residual=" << format_double(solution.residual_norm) << " iterations=" << solution.iterations;
    if (method == SelectionMethod::shk) out << " outer_iterations=" << outer;
    out << " converged=" << (converged ? "true" : "false") << "\n";
    return 0;
}

}  // namespace sparsesel::cli
