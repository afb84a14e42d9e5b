#include "sparsesel/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sparsesel {

Matrix gaussian_matrix(SplitMix64& rng, Index rows, Index cols) {
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    // Column-major fill order is part of the reproducibility contract.
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.normal();
    return m;
}

Vector gaussian_vector(SplitMix64& rng, Index size) {
    Vector v(static_cast<Eigen::Index>(size));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
    return v;
}

Matrix incoherent_dictionary(SplitMix64& rng, Index rows, Index cols, double max_coherence) {
    Matrix d(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    constexpr int kMaxDraws = 1000000;
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
        int draws = 0;
        while (true) {
            if (++draws > kMaxDraws)
                throw std::runtime_error("incoherent_dictionary: could not satisfy the coherence bound");
            Vector c = gaussian_vector(rng, rows);
            c.normalize();
            bool ok = true;
            for (Eigen::Index p = 0; p < j && ok; ++p) ok = std::abs(c.dot(d.col(p))) < max_coherence;
            if (ok) {
                d.col(j) = c;
                break;
            }
        }
    }
    return d;
}

PlantedInstance planted_instance(SplitMix64& rng, Index rows, Index cols, Index k, double max_coherence) {
    if (k > cols) throw std::invalid_argument("planted_instance: k exceeds column count");
    PlantedInstance inst;
    inst.y = incoherent_dictionary(rng, rows, cols, max_coherence);

    std::vector<Index> perm(cols);
    for (Index j = 0; j < cols; ++j) perm[j] = j;
    for (Index i = 0; i < k; ++i) std::swap(perm[i], perm[i + static_cast<Index>(rng.below(cols - i))]);
    inst.support.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(inst.support.begin(), inst.support.end());

    inst.coefficients.resize(static_cast<Eigen::Index>(k));
    Vector a = Vector::Zero(static_cast<Eigen::Index>(cols));
    for (Index i = 0; i < k; ++i) {
        const double mag = rng.uniform(1.0, 2.0);
        const double v = (rng.next() & 1U) ? mag : -mag;
        inst.coefficients(static_cast<Eigen::Index>(i)) = v;
        a(static_cast<Eigen::Index>(inst.support[i])) = v;
    }
    inst.b = inst.y * a;
    return inst;
}

LabeledPoints separable_blobs(SplitMix64& rng, std::size_t per_class, double separation, Index dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    Vector m0 = Vector::Zero(d);
    Vector m1 = Vector::Zero(d);
    m0(0) = 1.0;
    m1(0) = 1.0 + separation;
    if (d > 1) {
        m0(1) = 2.0;
        m1(1) = 2.0;
    }
    const Vector mid = 0.5 * (m0 + m1);
    const Vector dir = (m1 - m0).normalized();
    for (int attempt = 0; attempt < 1000; ++attempt) {
        LabeledPoints pts;
        bool separable = true;
        for (int cls = 1; cls >= 0; --cls) {
            const Vector& m = cls == 1 ? m0 : m1;
            for (std::size_t i = 0; i < per_class; ++i) {
                Vector x = m + gaussian_vector(rng, dim);
                const double side = (x - mid).dot(dir);
                separable = separable && (cls == 1 ? side < 0.0 : side > 0.0);
                pts.points.push_back(std::move(x));
                pts.labels.push_back(cls);
            }
        }
        if (separable) return pts;
    }
    throw std::runtime_error("separable_blobs: could not draw a separable sample");
}

LabeledPoints gaussian_classes(SplitMix64& rng, std::size_t per_class, Index dim, double mean_shift) {
    const auto d = static_cast<Eigen::Index>(dim);
    const Matrix mix = gaussian_matrix(rng, dim, dim) / std::sqrt(static_cast<double>(dim)) +
                       Matrix::Identity(d, d);
    const Vector shift = gaussian_vector(rng, dim).normalized() * mean_shift;
    LabeledPoints pts;
    for (int cls = 1; cls >= 0; --cls) {
        for (std::size_t i = 0; i < per_class; ++i) {
            Vector x = mix * gaussian_vector(rng, dim);
            if (cls == 0) x += shift;
            pts.points.push_back(std::move(x));
            pts.labels.push_back(cls);
        }
    }
    return pts;
}

AugmentedFeatureMatrix augment_points(const LabeledPoints& pts) {
    if (pts.points.empty()) throw std::invalid_argument("augment_points: no points");
    const auto d = pts.points.front().size();
    Matrix y(static_cast<Eigen::Index>(pts.points.size()), d + 1);
    for (std::size_t i = 0; i < pts.points.size(); ++i) {
        const double sign = pts.labels[i] == 1 ? 1.0 : -1.0;
        const auto r = static_cast<Eigen::Index>(i);
        y(r, 0) = sign;
        y.row(r).tail(d) = sign * pts.points[i].transpose();
    }
    return AugmentedFeatureMatrix(std::move(y));
}

std::vector<Patch> default_patches() {
    return {{2, 2, 20}, {2, 42, 20}, {22, 22, 20}, {42, 2, 20}, {42, 42, 20}};
}

bool SyntheticFaceSet::in_patch(int row, int col) const {
    return std::any_of(patches.begin(), patches.end(), [&](const Patch& p) { return p.contains(row, col); });
}

namespace {

// Unit-variance Gaussian-blurred white noise, cropped from a margin-padded field.
Image smooth_texture(SplitMix64& rng, int size, double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const int full = size + 2 * radius;
    Image white(full, full);
    for (int r = 0; r < full; ++r)
        for (int c = 0; c < full; ++c) white(r, c) = rng.normal();
    Vector g(2 * radius + 1);
    for (int k = -radius; k <= radius; ++k) g(k + radius) = std::exp(-0.5 * k * k / (sigma * sigma));
    Image rows = Image::Zero(full, size);
    for (int r = 0; r < full; ++r)
        for (int c = 0; c < size; ++c) rows(r, c) = white.row(r).segment(c, 2 * radius + 1).dot(g.transpose());
    Image tex = Image::Zero(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) tex(r, c) = rows.col(c).segment(r, 2 * radius + 1).dot(g);
    const double mean = tex.mean();
    const double sd = std::sqrt((tex.array() - mean).square().mean());
    return (tex.array() - mean) / sd;
}

}  // namespace

SyntheticFaceSet make_face_set(std::uint64_t seed, const SyntheticFaceConfig& cfg) {
    if (cfg.subjects < 1 || cfg.images_per_subject < 1)
        throw std::invalid_argument("make_face_set: need at least one subject and one image");
    SplitMix64 rng(seed);
    SyntheticFaceSet set;
    set.patches = default_patches();

    // Each subject owns a fixed smooth random texture per patch.
    std::vector<std::vector<Image>> identity(static_cast<std::size_t>(cfg.subjects));
    for (auto& subject : identity)
        for (const Patch& p : set.patches) subject.push_back(smooth_texture(rng, p.size, cfg.texture_sigma));

    // Hann taper: the identity texture fades out toward the patch border.
    auto window = [&](const Patch& p, int r, int c) {
        if (!cfg.taper_patches) return 1.0;
        const double u = (r - p.row + 0.5) / p.size;
        const double v = (c - p.col + 0.5) / p.size;
        return std::sin(std::numbers::pi * u) * std::sin(std::numbers::pi * v);
    };

    for (int s = 0; s < cfg.subjects; ++s) {
        for (int i = 0; i < cfg.images_per_subject; ++i) {
            Image img(kFaceSize, kFaceSize);
            const double brightness = 0.5 + cfg.brightness_jitter * (2.0 * rng.uniform() - 1.0);
            for (int r = 0; r < kFaceSize; ++r)
                for (int c = 0; c < kFaceSize; ++c) img(r, c) = brightness + cfg.background_noise * rng.normal();
            for (std::size_t p = 0; p < set.patches.size(); ++p) {
                const Patch& patch = set.patches[p];
                const Image& tex = identity[static_cast<std::size_t>(s)][p];
                for (int r = 0; r < patch.size; ++r) {
                    for (int c = 0; c < patch.size; ++c) {
                        const int pr = patch.row + r;
                        const int pc = patch.col + c;
                        img(pr, pc) += (cfg.pattern_amplitude * tex(r, c) + cfg.patch_noise * rng.normal()) *
                                       window(patch, pr, pc);
                    }
                }
            }
            set.images.push_back(img.cwiseMax(0.0).cwiseMin(1.0));
            set.subjects.push_back(s);
        }
    }
    return set;
}

}  // namespace sparsesel
