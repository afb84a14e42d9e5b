#pragma once

// Seeded synthetic data: planted sparse systems, separable point clouds and
// 64x64 face-like images whose identity lives in a few fixed patches.
// All randomness comes from SplitMix64, so outputs are identical everywhere.

#include "sparsesel/core_types.hpp"
#include "sparsesel/gabor.hpp"
#include "sparsesel/rng.hpp"

#include <vector>

namespace sparsesel {

/// i.i.d. standard normal entries.
Matrix gaussian_matrix(SplitMix64& rng, Index rows, Index cols);
Vector gaussian_vector(SplitMix64& rng, Index size);

/// Unit-norm columns, drawn one at a time and redrawn until the column's
/// coherence with all earlier ones is below `max_coherence`.
Matrix incoherent_dictionary(SplitMix64& rng, Index rows, Index cols, double max_coherence);

struct PlantedInstance {
    Matrix y;
    Vector b;
    std::vector<Index> support;  // ascending
    Vector coefficients;         // aligned with support
};

/// b = Y a* with |support| = k, coefficient magnitudes in [1, 2] with random signs.
PlantedInstance planted_instance(SplitMix64& rng, Index rows, Index cols, Index k, double max_coherence);

struct LabeledPoints {
    std::vector<Vector> points;
    std::vector<int> labels;  // 1 or 0
};

/// Two isotropic Gaussian blobs (unit sigma) whose means are `separation`
/// apart; redrawn until the classes are split by the perpendicular bisector.
LabeledPoints separable_blobs(SplitMix64& rng, std::size_t per_class, double separation, Index dim = 2);

/// Gaussian classes with a shared random covariance, used for Fisher checks.
LabeledPoints gaussian_classes(SplitMix64& rng, std::size_t per_class, Index dim, double mean_shift);

/// Augmented, sign-adjusted matrix: label 1 rows are [1, x], label 0 rows are -[1, x].
AugmentedFeatureMatrix augment_points(const LabeledPoints& pts);

struct Patch {
    int row = 0;
    int col = 0;
    int size = 0;

    bool contains(int r, int c) const { return r >= row && r < row + size && c >= col && c < col + size; }
};

struct SyntheticFaceConfig {
    int subjects = 10;
    int images_per_subject = 6;
    double pattern_amplitude = 0.2;   // identity texture contrast
    double texture_sigma = 2.5;       // blur of the identity textures, pixels
    bool taper_patches = true;        // Hann window over each patch
    double patch_noise = 0.01;
    double brightness_jitter = 0.1;   // per-image brightness is uniform in 0.5 +- jitter
    double background_noise = 0.06;
};

struct SyntheticFaceSet {
    std::vector<Image> images;           // subject-major: subject s image i at s * per_subject + i
    std::vector<int> subjects;
    std::vector<Patch> patches;          // identity-bearing regions

    bool in_patch(int row, int col) const;
};

/// The five identity patches used by make_face_set (20x20, disjoint).
std::vector<Patch> default_patches();

SyntheticFaceSet make_face_set(std::uint64_t seed, const SyntheticFaceConfig& cfg = {});

}  // namespace sparsesel
