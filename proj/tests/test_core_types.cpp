#include "sparsesel/core_types.hpp"
#include "sparsesel/rng.hpp"
#include "sparsesel/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace sparsesel;

TEST_CASE("discriminant of the zero model is zero") {
    WeightVector w{0.0, Vector::Zero(3)};
    CHECK(discriminant(w, FeatureVector(Vector::Constant(3, 7.5))) == 0.0);
}

TEST_CASE("discriminant adds the bias") {
    WeightVector w{1.0, Vector::Constant(1, 2.0)};
    CHECK(discriminant(w, FeatureVector(Vector::Constant(1, 3.0))) == 7.0);
}

TEST_CASE("densified sparse weights match the dense dot product") {
    SplitMix64 rng(11);
    SparseSolution s;
    s.support = {0, 2, 5};
    s.coefficients = {0.5, -1.25, 2.0};
    const Vector x = gaussian_vector(rng, 5);
    const WeightVector w = s.to_weight_vector(6);
    double expected = 0.5;
    expected += -1.25 * x(1) + 2.0 * x(4);
    CHECK(discriminant(w, FeatureVector(x)) == doctest::Approx(expected).epsilon(1e-12));
    const Vector a = s.densify(6);
    CHECK(a(0) == 0.5);
    CHECK(a(3) == 0.0);
}

TEST_CASE("dimension mismatch is an error") {
    WeightVector w{0.0, Vector::Zero(3)};
    CHECK_THROWS_AS(discriminant(w, FeatureVector(Vector::Zero(4))), dimension_error);
}

TEST_CASE("feature vectors must be finite and non-empty") {
    CHECK_THROWS(FeatureVector(Vector()));
    Vector v = Vector::Zero(2);
    v(1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS(FeatureVector(v));
}

TEST_CASE("augmentation and sign") {
    Vector x(2);
    x << 0.5, 0.2;
    const auto pos = AugmentedSample::augment(FeatureVector(x), Label::positive).with_sign_applied();
    const auto neg = AugmentedSample::augment(FeatureVector(x), Label::negative).with_sign_applied();
    CHECK(pos.values()(0) == 1.0);
    CHECK(pos.values()(1) == 0.5);
    CHECK(neg.values()(0) == -1.0);
    CHECK(neg.values()(2) == -0.2);
    CHECK_THROWS(AugmentedFeatureMatrix::from_samples({AugmentedSample::augment(FeatureVector(x), Label::positive)}));
    const auto y = AugmentedFeatureMatrix::from_samples({pos, neg});
    CHECK(y.rows() == 2);
    CHECK(y.feature_dim() == 2);
}

TEST_CASE("margins must be strictly positive") {
    CHECK_NOTHROW(MarginVector(Vector::Ones(3)));
    Vector b = Vector::Ones(3);
    b(1) = 0.0;
    CHECK_THROWS(MarginVector(b));
}

TEST_CASE("residual of a zero weight vector is -b") {
    const Matrix y = Matrix::Identity(4, 4);
    const Vector e = residual(y, Vector::Zero(4), Vector::Ones(4));
    CHECK(e.isApprox(-Vector::Ones(4)));
}

TEST_CASE("residual vanishes at an exact solution") {
    Matrix y = Matrix::Identity(3, 3);
    y(0, 1) = 2.0;
    Vector a(3);
    a << 1.0, 2.0, 3.0;
    const Vector b = y * a;
    CHECK(residual(y, a, b).norm() == 0.0);
}

TEST_CASE("residual matches an independent product") {
    SplitMix64 rng(3);
    const Matrix y = gaussian_matrix(rng, 6, 4);
    const Vector a = gaussian_vector(rng, 4);
    const Vector b = gaussian_vector(rng, 6);
    const Vector e = residual(y, a, b);
    for (int i = 0; i < 6; ++i) {
        double acc = -b(i);
        for (int j = 0; j < 4; ++j) acc += y(i, j) * a(j);
        CHECK(e(i) == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("typed residual checks shapes") {
    const AugmentedFeatureMatrix y(Matrix::Ones(3, 3));
    const WeightVector w{0.0, Vector::Zero(3)};
    CHECK_THROWS_AS(residual(y, w, MarginVector(Vector::Ones(3))), dimension_error);
}

TEST_CASE("sparsify inverts densify") {
    Vector a = Vector::Zero(6);
    a(1) = 3.0;
    a(4) = -2.0;
    const SparseSolution s = sparsify(a);
    CHECK(s.support == std::vector<Index>{1, 4});
    CHECK(s.densify(6) == a);
}
