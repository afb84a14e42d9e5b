#include "sparsesel/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sparsesel {

double GaborKernelSpec::wave_number() const {
    return kmax / std::pow(f, static_cast<double>(nu));
}

double GaborKernelSpec::orientation() const {
    return std::numbers::pi * static_cast<double>(mu) / 8.0;
}

int GaborKernelSpec::width() const {
    const double exact = 6.0 * sigma / wave_number() + 1.0;
    // Round up to the next odd integer; the slack absorbs round-off in 24+1.
    int w = static_cast<int>(std::ceil(exact - 1e-9));
    if (w % 2 == 0) ++w;
    return w;
}

void GaborKernelSpec::validate() const {
    if (mu < 0 || mu > 7) throw std::invalid_argument("GaborKernelSpec: mu must be in 0..7");
    if (!(sigma > 0.0) || !(kmax > 0.0) || !(f > 0.0))
        throw std::invalid_argument("GaborKernelSpec: sigma, kmax and f must be positive");
}

ComplexKernel make_kernel(const GaborKernelSpec& spec) {
    spec.validate();
    const double k = spec.wave_number();
    const double phi = spec.orientation();
    const double kx = k * std::cos(phi);
    const double ky = k * std::sin(phi);
    const double k2 = k * k;
    const double s2 = spec.sigma * spec.sigma;
    const double dc = std::exp(-s2 / 2.0);
    const int w = spec.width();
    const int h = (w - 1) / 2;

    ComplexKernel psi(w, w);
    for (int r = 0; r < w; ++r) {
        for (int c = 0; c < w; ++c) {
            const double zx = c - h;
            const double zy = r - h;
            const double envelope = (k2 / s2) * std::exp(-k2 * (zx * zx + zy * zy) / (2.0 * s2));
            const double phase = kx * zx + ky * zy;
            psi(r, c) = envelope * std::complex<double>(std::cos(phase) - dc, std::sin(phase));
        }
    }
    return psi;
}

GaborBank GaborBank::standard(double sigma, double kmax, double f) {
    GaborBank bank;
    for (int s = 0; s < kGaborScales; ++s) {
        for (int mu = 0; mu < kGaborOrientations; ++mu) {
            GaborKernelSpec spec{mu, kGaborMinScale + s, sigma, kmax, f};
            bank.kernels.push_back(make_kernel(spec));
            bank.specs.push_back(spec);
        }
    }
    return bank;
}

double convolve_magnitude_at(const Image& image, const ComplexKernel& kernel, int row, int col) {
    const int h = static_cast<int>(kernel.rows() - 1) / 2;
    const int rows = static_cast<int>(image.rows());
    const int cols = static_cast<int>(image.cols());
    // out(p) = sum_z K(z) I(p - z); kernel offsets outside the image read zero.
    const int r_lo = std::max(-h, row - rows + 1);
    const int r_hi = std::min(h, row);
    const int c_lo = std::max(-h, col - cols + 1);
    const int c_hi = std::min(h, col);
    double re = 0.0;
    double im = 0.0;
    for (int zy = r_lo; zy <= r_hi; ++zy) {
        for (int zx = c_lo; zx <= c_hi; ++zx) {
            const double pixel = image(row - zy, col - zx);
            const std::complex<double>& k = kernel(zy + h, zx + h);
            re += k.real() * pixel;
            im += k.imag() * pixel;
        }
    }
    return std::hypot(re, im);
}

Image convolve_magnitude(const Image& image, const ComplexKernel& kernel) {
    if (image.size() == 0) throw std::invalid_argument("convolve_magnitude: empty image");
    if (kernel.rows() != kernel.cols() || kernel.rows() % 2 == 0)
        throw std::invalid_argument("convolve_magnitude: kernel must be square with odd width");
    Image out(image.rows(), image.cols());
    for (int r = 0; r < image.rows(); ++r)
        for (int c = 0; c < image.cols(); ++c) out(r, c) = convolve_magnitude_at(image, kernel, r, c);
    return out;
}

std::size_t gabor_feature_length(int height, int width, int stride, int kernels) {
    const auto lr = static_cast<std::size_t>((height + stride - 1) / stride);
    const auto lc = static_cast<std::size_t>((width + stride - 1) / stride);
    return static_cast<std::size_t>(kernels) * lr * lc;
}

FeatureLocation locate_feature(std::size_t index, int height, int width, int stride) {
    const auto lr = static_cast<std::size_t>((height + stride - 1) / stride);
    const auto lc = static_cast<std::size_t>((width + stride - 1) / stride);
    if (index >= static_cast<std::size_t>(kGaborKernelCount) * lr * lc)
        throw std::out_of_range("locate_feature: index " + std::to_string(index) + " out of range");
    FeatureLocation loc;
    loc.col = static_cast<int>(index % lc) * stride;
    index /= lc;
    loc.row = static_cast<int>(index % lr) * stride;
    index /= lr;
    loc.orientation = static_cast<int>(index % kGaborOrientations);
    loc.scale = static_cast<int>(index / kGaborOrientations) + kGaborMinScale;
    return loc;
}

GaborFeatureVector extract_features_any(const Image& image, const GaborBank& bank, int stride) {
    if (image.size() == 0) throw std::invalid_argument("extract_features: empty image");
    if (stride < 1) throw std::invalid_argument("extract_features: stride must be positive");
    if (image.minCoeff() < 0.0 || image.maxCoeff() > 1.0)
        throw std::invalid_argument("extract_features: pixel values must lie in [0, 1]");
    GaborFeatureVector fv;
    fv.lattice_rows = static_cast<int>((image.rows() + stride - 1) / stride);
    fv.lattice_cols = static_cast<int>((image.cols() + stride - 1) / stride);
    fv.downsample = stride * stride;
    fv.values.resize(static_cast<Eigen::Index>(bank.size()) * fv.lattice_rows * fv.lattice_cols);
    Eigen::Index idx = 0;
    for (const auto& kernel : bank.kernels) {
        for (int lr = 0; lr < fv.lattice_rows; ++lr)
            for (int lc = 0; lc < fv.lattice_cols; ++lc)
                fv.values(idx++) = convolve_magnitude_at(image, kernel, lr * stride, lc * stride);
    }
    return fv;
}

GaborFeatureVector extract_features(const Image& image, const GaborBank& bank) {
    if (image.rows() != kFaceSize || image.cols() != kFaceSize)
        throw std::invalid_argument("extract_features: expected a 64x64 image, got " +
                                    std::to_string(image.rows()) + "x" + std::to_string(image.cols()));
    if (bank.size() != static_cast<std::size_t>(kGaborKernelCount))
        throw std::invalid_argument("extract_features: bank must hold 32 kernels");
    return extract_features_any(image, bank, kLatticeStride);
}

}  // namespace sparsesel
