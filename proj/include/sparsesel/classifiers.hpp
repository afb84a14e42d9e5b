#pragma once

// Recognition on selected features: nearest neighbour, the max-margin pair
// classifier built from the learned discriminant, and multi-class Fisher LDA.

#include "sparsesel/core_types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sparsesel {

enum class SelectionMethod { ssmes, sfisher, shk };
enum class SelectionSolver { mp, omp, l1 };

struct Provenance {
    std::uint64_t seed = 42;
    std::uint32_t ratio_intra = 1;
    std::uint32_t ratio_extra = 7;
    std::uint64_t digest = 0;
};

/// Selected feature indices (0-based into the raw feature vector) with the
/// discriminant weights and bias that selected them.
struct SelectionModel {
    std::size_t dim = 0;
    std::vector<Index> support;
    std::vector<double> weights;
    double bias = 0.0;
    SelectionMethod method = SelectionMethod::shk;
    SelectionSolver solver = SelectionSolver::omp;
    Provenance provenance;

    void validate() const;

    /// Builds the model from an augmented solution: column 0 is the bias,
    /// column j >= 1 is feature j - 1.
    static SelectionModel from_solution(const SparseSolution& s, std::size_t feature_dim, SelectionMethod method,
                                        SelectionSolver solver, Provenance provenance);

    /// Gathers the selected coordinates of a full feature vector.
    Vector reduce(const Vector& full) const;

    /// g(x) on a reduced vector.
    double score(const Vector& reduced) const;
};

std::string to_string(SelectionMethod m);
std::string to_string(SelectionSolver s);
SelectionMethod parse_selection_method(const std::string& s);
SelectionSolver parse_selection_solver(const std::string& s);

enum class DistanceKind { l1, l2, cosine };

std::string to_string(DistanceKind d);
DistanceKind parse_distance(const std::string& s);

/// l1, l2 or 1 - cos; cosine throws for a zero vector.
double distance(const Vector& u, const Vector& v, DistanceKind kind);

struct GalleryEntry {
    Vector features;
    int subject = 0;
};

struct NnResult {
    int subject = 0;
    std::size_t index = 0;
    double distance = 0.0;
};

NnResult nnc_classify(const std::vector<GalleryEntry>& gallery, const Vector& probe, DistanceKind kind);

struct MmcResult {
    int subject = 0;
    double score = 0.0;
    bool below_zero = false;  // no subject reached g > 0
};

/// For each subject, the best g(|probe - sample|) over its gallery samples;
/// the arg-max subject wins (lowest subject id on ties). Vectors are reduced.
MmcResult mmc_classify(const SelectionModel& model, const std::vector<GalleryEntry>& gallery,
                       const Vector& probe);

struct FisherModel {
    Matrix projection;            // dim x out_dim
    Vector center;                // training mean, subtracted before projecting
    std::vector<int> classes;     // class labels, ascending
    Matrix class_means;           // out_dim x classes, in projected space
    double regularization = 0.0;  // lambda added to S_w

    Vector project(const Vector& x) const;
    /// Nearest projected class mean under cosine distance.
    int classify(const Vector& x) const;
};

FisherModel fisher_fit(const std::vector<Vector>& samples, const std::vector<int>& labels, std::size_t out_dim);

}  // namespace sparsesel
