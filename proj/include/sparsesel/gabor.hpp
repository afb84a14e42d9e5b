#pragma once

// 32-kernel Gabor bank (4 scales x 8 orientations) and magnitude features.
//
//   psi(z) = |k|^2/sigma^2 exp(-|k|^2 |z|^2 / 2 sigma^2) [exp(i k.z) - exp(-sigma^2/2)]
//   k = k_nu (cos phi_mu, sin phi_mu),  k_nu = kmax / f^nu,  phi_mu = pi mu / 8
//
// Kernels are truncated to six Gaussian spans, i.e. the smallest odd width
// >= 6 sigma / k_nu + 1, which gives 19, 25, 35 and 49 for nu = -1..2.
// Images are (row, col) matrices; a kernel entry at (r, c) sits at planar
// offset z = (c - h, r - h) from the centre, h = (w - 1) / 2.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace sparsesel {

using Image = Eigen::MatrixXd;
using ComplexKernel = Eigen::MatrixXcd;

struct GaborKernelSpec {
    int mu = 0;  // orientation 0..7
    int nu = 0;  // scale -1..2
    double sigma = 2.0 * std::numbers::pi;
    double kmax = std::numbers::pi / 2.0;
    double f = std::numbers::sqrt2;

    double wave_number() const;  // k_nu
    double orientation() const;  // phi_mu
    int width() const;
    void validate() const;
};

ComplexKernel make_kernel(const GaborKernelSpec& spec);

inline constexpr int kGaborScales = 4;
inline constexpr int kGaborOrientations = 8;
inline constexpr int kGaborMinScale = -1;
inline constexpr int kGaborKernelCount = kGaborScales * kGaborOrientations;

struct GaborBank {
    std::vector<GaborKernelSpec> specs;  // scale-major: nu = -1..2, then mu = 0..7
    std::vector<ComplexKernel> kernels;

    static GaborBank standard(double sigma = 2.0 * std::numbers::pi, double kmax = std::numbers::pi / 2.0,
                              double f = std::numbers::sqrt2);
    std::size_t size() const noexcept { return kernels.size(); }
};

/// |(image * kernel)| at every pixel; plain convolution with zero padding.
Image convolve_magnitude(const Image& image, const ComplexKernel& kernel);

/// Same response, evaluated only at pixel (row, col).
double convolve_magnitude_at(const Image& image, const ComplexKernel& kernel, int row, int col);

inline constexpr int kFaceSize = 64;
inline constexpr int kLatticeStride = 4;
inline constexpr int kDownsampleFactor = kLatticeStride * kLatticeStride;

/// Magnitude responses on a stride x stride lattice, laid out as
/// (scale, orientation, row, col) in lexicographic order.
struct GaborFeatureVector {
    Eigen::VectorXd values;
    int lattice_rows = 0;
    int lattice_cols = 0;
    int downsample = kDownsampleFactor;

    std::size_t size() const noexcept { return static_cast<std::size_t>(values.size()); }
};

struct FeatureLocation {
    int scale = 0;        // nu
    int orientation = 0;  // mu
    int row = 0;          // pixel row
    int col = 0;          // pixel column
};

/// Feature length for an H x W image: kernels * ceil(H/s) * ceil(W/s).
std::size_t gabor_feature_length(int height, int width, int stride = kLatticeStride,
                                 int kernels = kGaborKernelCount);

/// Maps a feature index of a 64x64 extraction back to its kernel and pixel.
FeatureLocation locate_feature(std::size_t index, int height = kFaceSize, int width = kFaceSize,
                               int stride = kLatticeStride);

/// Features of a 64x64 image with pixel values in [0, 1]; length 8192.
GaborFeatureVector extract_features(const Image& image, const GaborBank& bank);

/// Same computation for any image size (used by tests and small examples).
GaborFeatureVector extract_features_any(const Image& image, const GaborBank& bank, int stride);

}  // namespace sparsesel
