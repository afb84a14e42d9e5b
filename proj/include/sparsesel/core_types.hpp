#pragma once

// Linear-model value types shared by the solvers, the Ho-Kashyap driver and
// the classifiers. Column 0 of every augmented quantity is the bias column.

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsesel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = std::size_t;

/// Thrown when operands have incompatible shapes.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raw (non-augmented) feature vector x = [x1..xd].
class FeatureVector {
public:
    explicit FeatureVector(Vector values);

    const Vector& values() const noexcept { return values_; }
    Index size() const noexcept { return static_cast<Index>(values_.size()); }

private:
    Vector values_;
};

enum class Label { positive, negative };

/// y = [1, x1..xd], optionally negated for negative samples.
class AugmentedSample {
public:
    static AugmentedSample augment(const FeatureVector& x, Label label);

    /// Returns the sign-adjusted copy: negative samples are negated in full.
    AugmentedSample with_sign_applied() const;

    const Vector& values() const noexcept { return values_; }
    Label label() const noexcept { return label_; }
    bool sign_applied() const noexcept { return sign_applied_; }

private:
    AugmentedSample(Vector values, Label label, bool sign_applied)
        : values_(std::move(values)), label_(label), sign_applied_(sign_applied) {}

    Vector values_;
    Label label_;
    bool sign_applied_;
};

/// The n x (d+1) matrix Y of sign-adjusted augmented samples.
///
/// Built either from AugmentedSamples (which must all be sign-adjusted) or
/// directly from a dense matrix that is already in signed augmented form.
class AugmentedFeatureMatrix {
public:
    explicit AugmentedFeatureMatrix(Matrix signed_rows);
    static AugmentedFeatureMatrix from_samples(const std::vector<AugmentedSample>& rows);

    const Matrix& matrix() const noexcept { return y_; }
    Index rows() const noexcept { return static_cast<Index>(y_.rows()); }
    Index cols() const noexcept { return static_cast<Index>(y_.cols()); }
    Index feature_dim() const noexcept { return cols() - 1; }

private:
    Matrix y_;
};

/// a = [w0, w1..wd].
struct WeightVector {
    double bias = 0.0;
    Vector weights;

    static WeightVector from_augmented(const Vector& a);
    Vector augmented() const;
};

/// Margin vector b; every entry strictly positive.
class MarginVector {
public:
    explicit MarginVector(Vector values);

    const Vector& values() const noexcept { return values_; }
    Index size() const noexcept { return static_cast<Index>(values_.size()); }

private:
    Vector values_;
};

/// Sparse augmented weight vector with explicit support.
struct SparseSolution {
    std::vector<Index> support;           // strictly increasing column indices
    std::vector<double> coefficients;     // aligned with support
    double residual_norm = 0.0;           // ||Ya - b||_2
    std::size_t iterations = 0;
    bool converged = true;
    std::vector<double> residual_history;   // greedy solvers: ||r|| after each step, entry 0 = ||b||
    std::vector<double> objective_history;  // l1 solver: objective after each iteration

    /// Dense vector of length `dim` holding the coefficients at the support.
    Vector densify(Index dim) const;
    WeightVector to_weight_vector(Index dim) const;
};

/// Inverse of SparseSolution::densify: nonzero entries of `a` as (support, coefficients).
SparseSolution sparsify(const Vector& a);

/// g(x) = w0 + sum_i wi xi.
double discriminant(const WeightVector& w, const FeatureVector& x);

/// e = Ya - b.
Vector residual(const Matrix& y, const Vector& a, const Vector& b);
Vector residual(const AugmentedFeatureMatrix& y, const WeightVector& a, const MarginVector& b);

/// Throws dimension_error with `what` when `got != expected`.
void require_dim(Index got, Index expected, const std::string& what);

}  // namespace sparsesel
