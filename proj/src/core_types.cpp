#include "sparsesel/core_types.hpp"

#include <cmath>

namespace sparsesel {

void require_dim(Index got, Index expected, const std::string& what) {
    if (got != expected) {
        throw dimension_error(what + ": expected dimension " + std::to_string(expected) +
                              ", got " + std::to_string(got));
    }
}

namespace {

void require_finite(const Eigen::Ref<const Matrix>& m, const char* what) {
    if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

}  // namespace

FeatureVector::FeatureVector(Vector values) : values_(std::move(values)) {
    if (values_.size() < 1) throw std::invalid_argument("FeatureVector: empty");
    require_finite(values_, "FeatureVector");
}

AugmentedSample AugmentedSample::augment(const FeatureVector& x, Label label) {
    Vector y(x.values().size() + 1);
    y(0) = 1.0;
    y.tail(x.values().size()) = x.values();
    return AugmentedSample(std::move(y), label, false);
}

AugmentedSample AugmentedSample::with_sign_applied() const {
    if (sign_applied_) return *this;
    if (label_ == Label::negative) return AugmentedSample(-values_, label_, true);
    return AugmentedSample(values_, label_, true);
}

AugmentedFeatureMatrix::AugmentedFeatureMatrix(Matrix signed_rows) : y_(std::move(signed_rows)) {
    if (y_.rows() < 1) throw dimension_error("AugmentedFeatureMatrix: no rows");
    if (y_.cols() < 2) throw dimension_error("AugmentedFeatureMatrix: need at least 2 columns");
    require_finite(y_, "AugmentedFeatureMatrix");
}

AugmentedFeatureMatrix AugmentedFeatureMatrix::from_samples(const std::vector<AugmentedSample>& rows) {
    if (rows.empty()) throw dimension_error("AugmentedFeatureMatrix: no rows");
    const auto cols = rows.front().values().size();
    Matrix y(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].sign_applied())
            throw std::invalid_argument("AugmentedFeatureMatrix: row " + std::to_string(i) +
                                        " has no sign adjustment");
        require_dim(static_cast<Index>(rows[i].values().size()), static_cast<Index>(cols),
                    "AugmentedFeatureMatrix row " + std::to_string(i));
        y.row(static_cast<Eigen::Index>(i)) = rows[i].values().transpose();
    }
    return AugmentedFeatureMatrix(std::move(y));
}

WeightVector WeightVector::from_augmented(const Vector& a) {
    if (a.size() < 1) throw dimension_error("WeightVector: empty augmented vector");
    return WeightVector{a(0), a.tail(a.size() - 1)};
}

Vector WeightVector::augmented() const {
    Vector a(weights.size() + 1);
    a(0) = bias;
    a.tail(weights.size()) = weights;
    return a;
}

MarginVector::MarginVector(Vector values) : values_(std::move(values)) {
    if (values_.size() < 1) throw std::invalid_argument("MarginVector: empty");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (!(values_(i) > 0.0) || !std::isfinite(values_(i)))
            throw std::invalid_argument("MarginVector: entry " + std::to_string(i) +
                                        " is not strictly positive");
    }
}

Vector SparseSolution::densify(Index dim) const {
    Vector a = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < support.size(); ++k) {
        if (support[k] >= dim)
            throw dimension_error("SparseSolution: support index " + std::to_string(support[k]) +
                                  " out of range for dimension " + std::to_string(dim));
        a(static_cast<Eigen::Index>(support[k])) = coefficients[k];
    }
    return a;
}

WeightVector SparseSolution::to_weight_vector(Index dim) const {
    return WeightVector::from_augmented(densify(dim));
}

SparseSolution sparsify(const Vector& a) {
    SparseSolution s;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != 0.0) {
            s.support.push_back(static_cast<Index>(i));
            s.coefficients.push_back(a(i));
        }
    }
    return s;
}

double discriminant(const WeightVector& w, const FeatureVector& x) {
    require_dim(x.size(), static_cast<Index>(w.weights.size()), "discriminant");
    double g = w.bias;
    for (Eigen::Index i = 0; i < w.weights.size(); ++i) g += w.weights(i) * x.values()(i);
    return g;
}

Vector residual(const Matrix& y, const Vector& a, const Vector& b) {
    require_dim(static_cast<Index>(a.size()), static_cast<Index>(y.cols()), "residual: weight vector");
    require_dim(static_cast<Index>(b.size()), static_cast<Index>(y.rows()), "residual: margin vector");
    return y * a - b;
}

Vector residual(const AugmentedFeatureMatrix& y, const WeightVector& a, const MarginVector& b) {
    return residual(y.matrix(), a.augmented(), b.values());
}

}  // namespace sparsesel
