// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include "../oracles.hpp"

#include "sparsesel/classifiers.hpp"
#include "sparsesel/gabor.hpp"
#include "sparsesel/io.hpp"
#include "sparsesel/pairs.hpp"
#include "sparsesel/shk.hpp"
#include "sparsesel/sparse_solvers.hpp"
#include "sparsesel/synthetic.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sparsesel;

namespace {

// Tolerances and limits.
constexpr double kC1Seconds = 1.0;
constexpr std::size_t kC2Instances = 100;
constexpr double kC2Seconds = 10.0;
constexpr std::size_t kC3Instances = 50;
constexpr double kC3Gap = 1e-6;
constexpr std::size_t kC5MaxOuter = 200;
constexpr std::size_t kC6Instances = 10;
constexpr double kC6Cos = 0.999;
constexpr double kC7Dc = 1e-3;
constexpr double kC7Impulse = 1e-12;
constexpr double kC8Accuracy = 0.95;
constexpr double kC8InPatch = 0.60;
constexpr double kC8Seconds = 300.0;
constexpr std::size_t kC8Atoms = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Running FNV-1a over every number an experiment produces.
class Digest {
public:
    void add(double v) { h_ = fnv1a64(&v, sizeof v, h_); }
    void add(std::size_t v) {
        const auto u = static_cast<std::uint64_t>(v);
        h_ = fnv1a64(&u, sizeof u, h_);
    }
    void add(const Vector& v) {
        add(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) add(v(i));
    }
    void add(const SparseSolution& s) {
        add(s.support.size());
        for (auto j : s.support) add(j);
        for (double c : s.coefficients) add(c);
        for (double r : s.residual_history) add(r);
        for (double o : s.objective_history) add(o);
    }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct Outcome {
    bool pass = false;
    std::string detail;
    std::uint64_t digest = 0;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool non_increasing(const std::vector<double>& s, bool strict) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (strict ? !(s[i] < s[i - 1]) : s[i] > s[i - 1]) return false;
    return true;
}

std::vector<Index> to_index(const std::vector<int>& v) {
    return {v.begin(), v.end()};
}

Outcome structural_constants() {
    const auto t0 = Clock::now();
    bool ok = true;
    const int want[] = {19, 25, 35, 49};
    std::string widths;
    for (int nu = -1; nu <= 2; ++nu) {
        GaborKernelSpec spec;
        spec.nu = nu;
        const int w = spec.width();
        ok = ok && w == want[nu + 1];
        widths += (widths.empty() ? "" : ",") + std::to_string(w);
    }
    const std::size_t full = gabor_feature_length(kFaceSize, kFaceSize, 1);
    const std::size_t reduced = gabor_feature_length(kFaceSize, kFaceSize);
    // Column count of an assembled pair system on full-length features.
    std::vector<PairSample> one{{FeatureVector(Vector::Zero(static_cast<Eigen::Index>(reduced))), PairLabel::intra, 0, 1}};
    const Index augmented = assemble_matrix(one, {}).y.cols();
    const PairCounts pc = count_pairs(300, 4);
    ok = ok && full == 131072 && reduced == 8192 && augmented == 8193 && pc.intra == 1800 && pc.extra == 717600;
    const double secs = seconds_since(t0);
    ok = ok && secs < kC1Seconds;
    return {ok,
            "widths=" + widths + " full=" + std::to_string(full) + " reduced=" + std::to_string(reduced) +
                " augmented=" + std::to_string(augmented) + " intra=" + std::to_string(pc.intra) +
                " extra=" + std::to_string(pc.extra) + " time=" + fmt(secs) + "s (limit " + fmt(kC1Seconds) + "s)",
            0};
}

Outcome omp_recovery() {
    const auto t0 = Clock::now();
    SplitMix64 rng(2024);
    Digest dg;
    std::size_t agree = 0;
    for (std::size_t t = 0; t < kC2Instances; ++t) {
        const Index k = 1 + t % 3;
        const double coherence = 1.0 / (2.0 * static_cast<double>(k) - 1.0);
        const PlantedInstance inst = planted_instance(rng, 20, 15, k, coherence);
        StoppingRule stop;
        stop.residual_threshold = 1e-6 * inst.b.norm();
        stop.max_atoms = 4;
        const SparseSolution omp = solve_omp(inst.y, inst.b, stop);
        const oracle::L0Result best = oracle::l0(inst.y, inst.b, 1e-3 * inst.b.norm(), 4);
        if (omp.support == to_index(best.support) && omp.support == inst.support) ++agree;
        dg.add(omp);
    }
    const double secs = seconds_since(t0);
    const bool ok = agree == kC2Instances && secs < kC2Seconds;
    return {ok,
            "agreement=" + std::to_string(agree) + "/" + std::to_string(kC2Instances) + " (need 100%) time=" +
                fmt(secs) + "s (limit " + fmt(kC2Seconds) + "s)",
            dg.value()};
}

Outcome l1_optimality() {
    SplitMix64 rng(77);
    Digest dg;
    double worst = 0.0;
    std::size_t zero_ok = 0;
    for (std::size_t t = 0; t < kC3Instances; ++t) {
        const Matrix y = gaussian_matrix(rng, 12, 8);
        const Vector b = gaussian_vector(rng, 12);
        const double gmax = (y.transpose() * b).lpNorm<Eigen::Infinity>();
        const double gamma = (0.05 + 0.15 * static_cast<double>(t % 5)) * gmax;
        L1Config cfg;
        cfg.gamma = gamma;
        cfg.convergence_tol = 1e-12;
        cfg.max_iterations = 200000;
        const SparseSolution s = solve_l1(y, b, cfg);
        const double obj = oracle::lasso_objective(y, b, s.densify(8), gamma);
        worst = std::max(worst, std::abs(obj - oracle::lasso_min(y, b, gamma)));
        dg.add(s);

        bool zero = true;
        for (double scale : {1.0, 1.5}) {
            L1Config zc = cfg;
            zc.gamma = scale * gmax;
            const SparseSolution z = solve_l1(y, b, zc);
            zero = zero && z.support.empty() && z.densify(8).isZero(0.0);
        }
        zero_ok += zero ? 1 : 0;
    }
    const bool ok = worst <= kC3Gap && zero_ok == kC3Instances;
    return {ok,
            "max_gap=" + fmt(worst) + " (tol " + fmt(kC3Gap) + ") zero_at_threshold=" + std::to_string(zero_ok) + "/" +
                std::to_string(kC3Instances),
            dg.value()};
}

Outcome monotonicity() {
    SplitMix64 rng(4);
    Digest dg;
    std::size_t greedy = 0;
    std::size_t greedy_ok = 0;
    for (int t = 0; t < 30; ++t) {
        Matrix y;
        Vector b;
        if (t % 2 == 0) {
            PlantedInstance inst = planted_instance(rng, 20, 15, 3, 0.2);
            y = std::move(inst.y);
            b = std::move(inst.b);
        } else {
            y = gaussian_matrix(rng, 25, 40);
            b = gaussian_vector(rng, 25);
        }
        StoppingRule stop;
        stop.max_atoms = 10;
        stop.max_mp_iterations = 60;
        const SparseSolution mp = solve_mp(y, b, stop);
        const SparseSolution omp = solve_omp(y, b, stop);
        greedy += 2;
        greedy_ok += non_increasing(mp.residual_history, false) ? 1 : 0;
        greedy_ok += non_increasing(omp.residual_history, true) ? 1 : 0;
        dg.add(mp);
        dg.add(omp);
    }

    std::size_t l1 = 0;
    std::size_t l1_ok = 0;
    for (int t = 0; t < 20; ++t) {
        const Matrix y = gaussian_matrix(rng, 30, 50);
        const Vector b = gaussian_vector(rng, 30);
        L1Config cfg;
        cfg.gamma = 0.2 * (y.transpose() * b).lpNorm<Eigen::Infinity>();
        const SparseSolution s = solve_l1(y, b, cfg);
        ++l1;
        l1_ok += non_increasing(s.objective_history, false) ? 1 : 0;
        dg.add(s);
    }

    std::size_t traces = 0;
    std::size_t traces_ok = 0;
    for (int t = 0; t < 6; ++t) {
        const AugmentedFeatureMatrix y = augment_points(separable_blobs(rng, 20, 4.0 + t, 3));
        for (InnerSolver s : {InnerSolver::mp, InnerSolver::omp, InnerSolver::dense}) {
            ShkConfig cfg;
            cfg.inner_solver = s;
            cfg.stop.max_atoms = 3;
            cfg.max_outer_iterations = 100;
            const ShkResult r = run_shk(y, cfg);
            bool ok = true;
            const auto& its = r.trace.iterations;
            for (std::size_t i = 1; i < its.size(); ++i)
                ok = ok && (its[i].margin.array() >= its[i - 1].margin.array()).all();
            ++traces;
            traces_ok += ok ? 1 : 0;
            dg.add(r.solution);
            dg.add(r.margin.values());
        }
    }
    const bool ok = greedy_ok == greedy && l1_ok == l1 && traces_ok == traces;
    return {ok,
            "greedy_residual=" + std::to_string(greedy_ok) + "/" + std::to_string(greedy) + " l1_objective=" +
                std::to_string(l1_ok) + "/" + std::to_string(l1) + " shk_margin=" + std::to_string(traces_ok) + "/" +
                std::to_string(traces),
            dg.value()};
}

Outcome shk_separability() {
    SplitMix64 rng(5);
    const LabeledPoints pts = separable_blobs(rng, 20, 6.0);
    const AugmentedFeatureMatrix y = augment_points(pts);
    Digest dg;
    std::string detail = "samples=" + std::to_string(y.rows()) + " dim=" + std::to_string(y.feature_dim());
    bool ok = y.rows() == 40 && y.feature_dim() == 2;
    for (InnerSolver s : {InnerSolver::dense, InnerSolver::omp}) {
        ShkConfig cfg;
        cfg.inner_solver = s;
        cfg.stop.max_atoms = 3;
        cfg.max_outer_iterations = kC5MaxOuter;
        const ShkResult r = run_shk(y, cfg);
        const double min_margin = (y.matrix() * r.solution.densify(y.cols())).minCoeff();
        const bool sep = min_margin > 0.0 && r.trace.iterations.size() <= kC5MaxOuter;
        ok = ok && sep;
        detail += " " + to_string(s) + ":min_Ya=" + fmt(min_margin) + ",outer=" +
                  std::to_string(r.trace.iterations.size()) + ",converged=" + (r.converged ? "yes" : "no");
        dg.add(r.solution);
    }
    return {ok, detail, dg.value()};
}

Outcome fisher_equivalence() {
    SplitMix64 rng(6);
    Digest dg;
    double worst = 1.0;
    double worst_fit = 1.0;
    for (std::size_t t = 0; t < kC6Instances; ++t) {
        LabeledPoints pts = gaussian_classes(rng, 20 + 4 * t, 4 + static_cast<Index>(t % 3), 1.5);
        // Drop some negatives so the two class ratios differ.
        for (std::size_t k = 0; k < 3 + t; ++k) {
            pts.points.pop_back();
            pts.labels.pop_back();
        }
        const AugmentedFeatureMatrix y = augment_points(pts);
        const MarginVector b = make_margin({MarginKind::sfisher, 1.0}, pts.labels);
        const SparseSolution mse = solve_dense(y.matrix(), b.values());
        const Vector a = mse.densify(y.cols());
        const Vector w = a.tail(a.size() - 1);

        // Direct Fisher direction Sw^-1 (m1 - m0).
        const auto d = pts.points.front().size();
        Vector m[2] = {Vector::Zero(d), Vector::Zero(d)};
        double n[2] = {0.0, 0.0};
        for (std::size_t i = 0; i < pts.points.size(); ++i) {
            m[pts.labels[i]] += pts.points[i];
            n[pts.labels[i]] += 1.0;
        }
        m[0] /= n[0];
        m[1] /= n[1];
        Matrix sw = Matrix::Zero(d, d);
        for (std::size_t i = 0; i < pts.points.size(); ++i) {
            const Vector c = pts.points[i] - m[pts.labels[i]];
            sw += c * c.transpose();
        }
        const Vector fisher = sw.llt().solve(m[1] - m[0]);
        worst = std::min(worst, std::abs(w.dot(fisher)) / (w.norm() * fisher.norm()));

        const FisherModel fm = fisher_fit(pts.points, pts.labels, 1);
        const Vector v = fm.projection.col(0);
        worst_fit = std::min(worst_fit, std::abs(w.dot(v)) / (w.norm() * v.norm()));
        dg.add(a);
        dg.add(v);
    }
    const bool ok = worst > kC6Cos && worst_fit > kC6Cos;
    return {ok,
            "instances=" + std::to_string(kC6Instances) + " min|cos|(mse,direct)=" + fmt(worst) +
                " min|cos|(mse,fisher_fit)=" + fmt(worst_fit) + " (need > " + fmt(kC6Cos) + ")",
            dg.value()};
}

Outcome gabor_invariants() {
    const GaborBank bank = GaborBank::standard();
    Digest dg;
    double worst_dc = 0.0;
    double worst_const = 0.0;
    double worst_impulse = 0.0;
    const double c = 0.6;
    for (const auto& k : bank.kernels) {
        const double mass = k.cwiseAbs().sum();
        worst_dc = std::max(worst_dc, std::abs(k.sum()) / mass);

        const int w = static_cast<int>(k.rows());
        const int h = (w - 1) / 2;
        const Image flat = Image::Constant(w + 4, w + 4, c);
        for (int r = h; r < w + 4 - h; ++r)
            for (int col = h; col < w + 4 - h; ++col)
                worst_const = std::max(worst_const, convolve_magnitude_at(flat, k, r, col) / (c * mass));

        Image impulse = Image::Zero(w, w);
        impulse(h, h) = 1.0;
        const Image out = convolve_magnitude(impulse, k);
        const double peak = k.cwiseAbs().maxCoeff();
        for (int r = 0; r < w; ++r)
            for (int col = 0; col < w; ++col)
                worst_impulse = std::max(worst_impulse, std::abs(out(r, col) - std::abs(k(w - 1 - r, w - 1 - col))) / peak);
        dg.add(out.reshaped());
    }
    const bool ok = worst_dc < kC7Dc && worst_const < kC7Dc && worst_impulse < kC7Impulse;
    return {ok,
            "kernels=" + std::to_string(bank.size()) + " max|sum|/sum|psi|=" + fmt(worst_dc) + " (tol " + fmt(kC7Dc) +
                ") max_constant_response/(c*sum|psi|)=" + fmt(worst_const) + " (tol " + fmt(kC7Dc) +
                ") impulse_rel_err=" + fmt(worst_impulse) + " (tol " + fmt(kC7Impulse) + ")",
            dg.value()};
}

Outcome end_to_end() {
    const auto t0 = Clock::now();
    const SyntheticFaceSet set = make_face_set(42);
    const GaborBank bank = GaborBank::standard();
    std::vector<GaborFeatureVector> feats;
    for (const auto& img : set.images) feats.push_back(extract_features(img, bank));

    const std::size_t per = 6;
    std::vector<ManifestEntry> train;
    std::vector<GaborFeatureVector> train_feats;
    std::vector<std::size_t> gallery_idx;
    std::vector<std::size_t> probe_idx;
    for (std::size_t i = 0; i < set.images.size(); ++i) {
        if (i % per < 4) {
            train.push_back({"img" + std::to_string(i), "s" + std::to_string(set.subjects[i])});
            train_feats.push_back(feats[i]);
            gallery_idx.push_back(i);
        } else {
            probe_idx.push_back(i);
        }
    }
    SamplingPolicy policy;
    policy.ratio = {1, 7};
    policy.seed = 42;
    const PairBuildResult pairs = build_pairs(train_feats, DatasetManifest(train), policy);
    const AssembledSystem sys = assemble_matrix(pairs.samples, {MarginKind::uniform, 1.0});

    ShkConfig cfg;
    cfg.inner_solver = InnerSolver::omp;
    cfg.stop.max_atoms = kC8Atoms;
    const ShkResult res = run_shk(sys.y, cfg);
    const SelectionModel model = SelectionModel::from_solution(res.solution, sys.y.feature_dim(),
                                                               SelectionMethod::shk, SelectionSolver::omp, {});

    std::size_t in_patch = 0;
    for (auto j : model.support) {
        const FeatureLocation loc = locate_feature(j);
        in_patch += set.in_patch(loc.row, loc.col) ? 1 : 0;
    }
    std::size_t lattice_in = 0;
    for (int r = 0; r < kFaceSize; r += kLatticeStride)
        for (int col = 0; col < kFaceSize; col += kLatticeStride) lattice_in += set.in_patch(r, col) ? 1 : 0;
    const double chance = static_cast<double>(lattice_in) / 256.0;

    std::vector<GalleryEntry> gallery;
    for (auto i : gallery_idx) gallery.push_back({model.reduce(feats[i].values), set.subjects[i]});
    std::size_t correct = 0;
    for (auto i : probe_idx)
        correct += nnc_classify(gallery, model.reduce(feats[i].values), DistanceKind::l1).subject == set.subjects[i];
    const double secs = seconds_since(t0);

    const double acc = static_cast<double>(correct) / static_cast<double>(probe_idx.size());
    const double frac = model.support.empty() ? 0.0 : static_cast<double>(in_patch) / model.support.size();
    Digest dg;
    dg.add(res.solution);
    dg.add(res.margin.values());
    const bool ok = acc >= kC8Accuracy && frac >= kC8InPatch && secs < kC8Seconds;
    return {ok,
            "pairs=" + std::to_string(sys.y.rows()) + " columns=" + std::to_string(sys.y.cols()) +
                " outer=" + std::to_string(res.trace.iterations.size()) + " atoms=" +
                std::to_string(res.solution.support.size()) + " features=" + std::to_string(model.support.size()) +
                " accuracy=" + std::to_string(correct) + "/" + std::to_string(probe_idx.size()) + " (need >= " +
                fmt(kC8Accuracy) + ") in_patch=" + std::to_string(in_patch) + "/" +
                std::to_string(model.support.size()) + "=" + fmt(frac) + " (need >= " + fmt(kC8InPatch) +
                "; lattice share inside patches " + fmt(chance) + ") time=" + fmt(secs) + "s (limit " +
                fmt(kC8Seconds) + "s)",
            dg.value()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "structural constants", structural_constants},
        {2, "OMP exact recovery vs exhaustive l0", omp_recovery},
        {3, "l1 optimality vs enumeration", l1_optimality},
        {4, "monotonicity", monotonicity},
        {5, "SHK separability", shk_separability},
        {6, "Fisher / MSE collinearity", fisher_equivalence},
        {7, "Gabor invariants", gabor_invariants},
        {8, "end-to-end synthetic recognition", end_to_end},
    };

    int failures = 0;
    std::vector<std::uint64_t> digests;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what(), 0};
        }
        failures += o.pass ? 0 : 1;
        digests.push_back(o.digest);
        std::printf("%s  criterion %d  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }

    // Determinism: rerun 2..8 and compare artifact digests.
    std::string detail;
    bool same = true;
    for (std::size_t i = 1; i < criteria.size(); ++i) {
        std::uint64_t again = 0;
        try {
            again = criteria[i].run().digest;
        } catch (const std::exception&) {
            again = 0;
        }
        const bool eq = again == digests[i] && again != 0;
        same = same && eq;
        detail += (detail.empty() ? "" : " ") + std::to_string(criteria[i].id) + ":" + hex64(digests[i]) +
                  (eq ? "=" : "!=") + hex64(again);
    }
    failures += same ? 0 : 1;
    std::printf("%s  criterion 9  determinism: %s\n", same ? "PASS" : "FAIL", detail.c_str());
    return failures == 0 ? 0 : 1;
}
