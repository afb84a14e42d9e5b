#include "sparsesel/classifiers.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace sparsesel {

void SelectionModel::validate() const {
    if (support.size() != weights.size()) throw std::invalid_argument("SelectionModel: support/weights size mismatch");
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k] >= dim)
            throw std::invalid_argument("SelectionModel: index " + std::to_string(support[k]) + " >= dim " +
                                        std::to_string(dim));
        if (k > 0 && support[k] <= support[k - 1])
            throw std::invalid_argument("SelectionModel: support must be strictly increasing");
    }
}

SelectionModel SelectionModel::from_solution(const SparseSolution& s, std::size_t feature_dim, SelectionMethod method,
                                             SelectionSolver solver, Provenance provenance) {
    SelectionModel m;
    m.dim = feature_dim;
    m.method = method;
    m.solver = solver;
    m.provenance = provenance;
    for (std::size_t k = 0; k < s.support.size(); ++k) {
        if (s.support[k] == 0) {
            m.bias = s.coefficients[k];
        } else {
            m.support.push_back(s.support[k] - 1);
            m.weights.push_back(s.coefficients[k]);
        }
    }
    m.validate();
    return m;
}

Vector SelectionModel::reduce(const Vector& full) const {
    require_dim(static_cast<Index>(full.size()), dim, "SelectionModel::reduce");
    Vector out(static_cast<Eigen::Index>(support.size()));
    for (std::size_t k = 0; k < support.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = full(static_cast<Eigen::Index>(support[k]));
    return out;
}

double SelectionModel::score(const Vector& reduced) const {
    require_dim(static_cast<Index>(reduced.size()), support.size(), "SelectionModel::score");
    double g = bias;
    for (std::size_t k = 0; k < weights.size(); ++k) g += weights[k] * reduced(static_cast<Eigen::Index>(k));
    return g;
}

std::string to_string(SelectionMethod m) {
    switch (m) {
    case SelectionMethod::ssmes: return "ssmes";
    case SelectionMethod::sfisher: return "sfisher";
    case SelectionMethod::shk: return "shk";
    }
    return "?";
}

std::string to_string(SelectionSolver s) {
    switch (s) {
    case SelectionSolver::mp: return "mp";
    case SelectionSolver::omp: return "omp";
    case SelectionSolver::l1: return "l1";
    }
    return "?";
}

SelectionMethod parse_selection_method(const std::string& s) {
    if (s == "ssmes") return SelectionMethod::ssmes;
    if (s == "sfisher") return SelectionMethod::sfisher;
    if (s == "shk") return SelectionMethod::shk;
    throw std::invalid_argument("unknown method '" + s + "'");
}

SelectionSolver parse_selection_solver(const std::string& s) {
    if (s == "mp") return SelectionSolver::mp;
    if (s == "omp") return SelectionSolver::omp;
    if (s == "l1") return SelectionSolver::l1;
    throw std::invalid_argument("unknown solver '" + s + "'");
}

std::string to_string(DistanceKind d) {
    switch (d) {
    case DistanceKind::l1: return "l1";
    case DistanceKind::l2: return "l2";
    case DistanceKind::cosine: return "cosine";
    }
    return "?";
}

DistanceKind parse_distance(const std::string& s) {
    if (s == "l1") return DistanceKind::l1;
    if (s == "l2") return DistanceKind::l2;
    if (s == "cosine") return DistanceKind::cosine;
    throw std::invalid_argument("unknown distance '" + s + "'");
}

double distance(const Vector& u, const Vector& v, DistanceKind kind) {
    require_dim(static_cast<Index>(v.size()), static_cast<Index>(u.size()), "distance");
    switch (kind) {
    case DistanceKind::l1: return (u - v).lpNorm<1>();
    case DistanceKind::l2: return (u - v).norm();
    case DistanceKind::cosine: {
        const double nu = u.norm();
        const double nv = v.norm();
        if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cosine distance undefined for a zero vector");
        return 1.0 - u.dot(v) / (nu * nv);
    }
    }
    throw std::invalid_argument("unknown distance");
}

NnResult nnc_classify(const std::vector<GalleryEntry>& gallery, const Vector& probe, DistanceKind kind) {
    if (gallery.empty()) throw std::invalid_argument("nnc_classify: empty gallery");
    NnResult best{gallery.front().subject, 0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < gallery.size(); ++i) {
        const double d = distance(gallery[i].features, probe, kind);
        if (d < best.distance) best = NnResult{gallery[i].subject, i, d};
    }
    return best;
}

MmcResult mmc_classify(const SelectionModel& model, const std::vector<GalleryEntry>& gallery, const Vector& probe) {
    if (gallery.empty()) throw std::invalid_argument("mmc_classify: no candidate subjects");
    std::map<int, double> best;  // ordered by subject id
    for (const auto& g : gallery) {
        require_dim(static_cast<Index>(g.features.size()), static_cast<Index>(probe.size()), "mmc_classify");
        const double s = model.score((probe - g.features).cwiseAbs());
        auto [it, inserted] = best.emplace(g.subject, s);
        if (!inserted) it->second = std::max(it->second, s);
    }
    MmcResult r{best.begin()->first, best.begin()->second, false};
    for (const auto& [subject, s] : best)
        if (s > r.score) r = MmcResult{subject, s, false};
    r.below_zero = !(r.score > 0.0);
    return r;
}

Vector FisherModel::project(const Vector& x) const {
    require_dim(static_cast<Index>(x.size()), static_cast<Index>(projection.rows()), "FisherModel::project");
    return projection.transpose() * (x - center);
}

int FisherModel::classify(const Vector& x) const {
    const Vector p = project(x);
    int best = classes.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const double d = distance(class_means.col(static_cast<Eigen::Index>(c)), p, DistanceKind::cosine);
        if (d < best_d) {
            best_d = d;
            best = classes[c];
        }
    }
    return best;
}

FisherModel fisher_fit(const std::vector<Vector>& samples, const std::vector<int>& labels, std::size_t out_dim) {
    if (samples.empty()) throw std::invalid_argument("fisher_fit: no samples");
    require_dim(labels.size(), samples.size(), "fisher_fit: labels");
    const auto dim = samples.front().size();
    for (const auto& s : samples) require_dim(static_cast<Index>(s.size()), static_cast<Index>(dim), "fisher_fit: sample");

    std::map<int, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
    if (members.size() < 2) throw std::invalid_argument("fisher_fit: need at least two classes");
    if (out_dim < 1 || out_dim > members.size() - 1)
        throw std::invalid_argument("fisher_fit: out_dim must be in 1..classes-1");

    Vector mean = Vector::Zero(dim);
    for (const auto& s : samples) mean += s;
    mean /= static_cast<double>(samples.size());

    Matrix sw = Matrix::Zero(dim, dim);
    Matrix sb = Matrix::Zero(dim, dim);
    std::vector<Vector> class_mean;
    FisherModel model;
    for (const auto& [label, idx] : members) {
        Vector mu = Vector::Zero(dim);
        for (auto i : idx) mu += samples[i];
        mu /= static_cast<double>(idx.size());
        for (auto i : idx) {
            const Vector d = samples[i] - mu;
            sw.noalias() += d * d.transpose();
        }
        const Vector dm = mu - mean;
        sb.noalias() += static_cast<double>(idx.size()) * dm * dm.transpose();
        model.classes.push_back(label);
        class_mean.push_back(mu);
    }

    double lambda = 1e-4 * sw.trace() / static_cast<double>(dim);
    if (!(lambda > 0.0)) lambda = 1e-12;  // all classes are single points
    model.regularization = lambda;
    model.center = mean;
    sw.diagonal().array() += lambda;

    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(sb, sw);
    if (ges.info() != Eigen::Success) throw std::runtime_error("fisher_fit: eigen decomposition failed");
    const Matrix& vecs = ges.eigenvectors();  // ascending eigenvalues
    model.projection.resize(dim, static_cast<Eigen::Index>(out_dim));
    for (std::size_t k = 0; k < out_dim; ++k) {
        Vector v = vecs.col(dim - 1 - static_cast<Eigen::Index>(k));
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0) v = -v;  // deterministic sign
        model.projection.col(static_cast<Eigen::Index>(k)) = v;
    }
    model.class_means.resize(static_cast<Eigen::Index>(out_dim), static_cast<Eigen::Index>(class_mean.size()));
    for (std::size_t c = 0; c < class_mean.size(); ++c)
        model.class_means.col(static_cast<Eigen::Index>(c)) = model.projection.transpose() * (class_mean[c] - mean);
    return model;
}

}  // namespace sparsesel
