#include "sparsesel/cli.hpp"

#include <CLI11.hpp>

#include <ostream>

namespace sparsesel::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse feature selection for linear discriminants"};
    app.require_subcommand(1);

    ExtractOptions ex;
    auto* extract = app.add_subcommand("extract", "Gabor features for 64x64 PGM images");
    extract->add_option("--manifest", ex.manifest, "CSV with columns path,subject");
    extract->add_option("--image-dir", ex.image_dir, "Directory of .pgm files (subject = stem before '_')");
    extract->add_option("--out", ex.out, "Feature archive to write")->required();
    extract->add_flag("--continue-on-error", ex.continue_on_error, "Skip unreadable images");

    PairsOptions pa;
    auto* pairs = app.add_subcommand("pairs", "Sample intra/extra pairs into a signed pair matrix");
    pairs->add_option("--features", pa.features, "Feature archive")->required();
    pairs->add_option("--ratio", pa.ratio, "intra:extra sampling ratio")->capture_default_str();
    pairs->add_option("--seed", pa.seed, "Sampling seed")->capture_default_str();
    pairs->add_option("--out", pa.out, "SPPM file to write")->required();

    SelectOptions se;
    double gamma = 0.0;
    auto* select = app.add_subcommand("select", "Select features with SSMES, SFisher or SHK");
    select->add_option("--pairs", se.pairs, "SPPM pair matrix");
    select->add_option("--features", se.features, "Feature archive (pairs are sampled on the fly)");
    select->add_option("--ratio", se.ratio, "intra:extra sampling ratio")->capture_default_str();
    select->add_option("--seed", se.seed, "Sampling seed")->capture_default_str();
    select->add_option("--method", se.method, "ssmes | sfisher | shk")->capture_default_str();
    select->add_option("--solver", se.solver, "mp | omp | l1")->capture_default_str();
    select->add_option("--max-atoms", se.max_atoms, "Greedy stop: number of atoms")->capture_default_str();
    select->add_option("--residual-threshold", se.residual_threshold, "Greedy stop: residual norm")
        ->capture_default_str();
    auto* gamma_opt = select->add_option("--gamma", gamma, "l1 penalty weight (required for l1)");
    select->add_option("--l1-max-iterations", se.l1_max_iterations, "l1 iteration cap")->capture_default_str();
    select->add_option("--l1-tol", se.l1_tol, "l1 convergence tolerance")->capture_default_str();
    select->add_option("--eta1", se.eta1, "SHK initial learn rate")->capture_default_str();
    select->add_option("--epsilon", se.epsilon, "SHK stopping threshold on ||db||")->capture_default_str();
    select->add_option("--max-outer", se.max_outer, "SHK outer iteration cap")->capture_default_str();
    select->add_option("--initial-margin", se.initial_margin, "SHK uniform b(0) value")->capture_default_str();
    select->add_option("--shk-init", se.shk_init, "SHK b(0): uniform | sfisher")->capture_default_str();
    select->add_option("--trace", se.trace, "Write the SHK trace CSV here");
    select->add_option("--out", se.out, "Model file to write")->required();

    EvalOptions ev;
    auto* eval = app.add_subcommand("eval", "Recognition accuracy on a probe set");
    eval->add_option("--model", ev.model, "Selection model")->required();
    eval->add_option("--gallery", ev.gallery, "Gallery feature archive")->required();
    eval->add_option("--probe", ev.probe, "Probe feature archive")->required();
    eval->add_option("--classifier", ev.classifier, "nnc | mmc | fc")->capture_default_str();
    eval->add_option("--distance", ev.distance, "NNC distance: l1 | l2 | cosine")->capture_default_str();
    eval->add_option("--predictions", ev.predictions, "Per-probe predictions CSV")->required();

    SynthParams sy;
    double coherence = 0.0;
    std::string report;
    auto* synth = app.add_subcommand("synth", "Oracle cross-checks on seeded synthetic instances");
    synth->add_option("--seed", sy.seed, "Seed")->capture_default_str();
    synth->add_option("--instances", sy.instances, "Planted l0 instances")->capture_default_str();
    synth->add_option("--n", sy.rows, "Rows per planted instance")->capture_default_str();
    synth->add_option("--d", sy.cols, "Columns per planted instance")->capture_default_str();
    synth->add_option("--k", sy.k, "Planted nonzeros")->capture_default_str();
    auto* coh_opt = synth->add_option("--coherence", coherence, "Max column coherence (default 1/(2k-1))");
    synth->add_option("--oracle-max-support", sy.oracle_max_support, "Oracle support limit")->capture_default_str();
    synth->add_option("--l1-instances", sy.l1_instances, "l1 instances")->capture_default_str();
    synth->add_option("--shk-instances", sy.shk_instances, "SHK instances")->capture_default_str();
    synth->add_option("--report", report, "Also write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*extract) return cmd_extract(ex, out, err);
        if (*pairs) return cmd_pairs(pa, out, err);
        if (*select) {
            if (*gamma_opt) se.gamma = gamma;
            return cmd_select(se, out, err);
        }
        if (*eval) return cmd_eval(ev, out, err);
        if (*synth) {
            if (*coh_opt) sy.coherence = coherence;
            return cmd_synth(sy, report, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace sparsesel::cli
