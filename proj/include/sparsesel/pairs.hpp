#pragma once

// Intra/extra-personal pair construction.
//
// Pairs (i, j), i < j, are enumerated over manifest order. Every intra pair is
// kept; extra pairs are drawn uniformly without replacement (partial
// Fisher-Yates driven by SplitMix64) until extra = floor(intra * b / a) for a
// target ratio a:b. The features of a pair are |f_i - f_j|.

#include "sparsesel/core_types.hpp"
#include "sparsesel/gabor.hpp"
#include "sparsesel/shk.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace sparsesel {

struct ManifestEntry {
    std::string path;
    std::string subject;
};

class DatasetManifest {
public:
    explicit DatasetManifest(std::vector<ManifestEntry> entries);

    /// CSV with header `path,subject`. Relative paths stay relative; see resolve().
    static DatasetManifest parse(const std::string& csv_text);
    static DatasetManifest read(const std::filesystem::path& path);

    const std::vector<ManifestEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    /// Distinct subjects in first-appearance order.
    const std::vector<std::string>& subjects() const noexcept { return subjects_; }
    /// Subject index (into subjects()) of every entry.
    const std::vector<int>& subject_ids() const noexcept { return subject_ids_; }
    std::size_t count_for(const std::string& subject) const;

private:
    std::vector<ManifestEntry> entries_;
    std::vector<std::string> subjects_;
    std::vector<int> subject_ids_;
};

enum class PairLabel : std::uint8_t { extra = 0, intra = 1 };

struct PairSample {
    FeatureVector feature;
    PairLabel label;
    std::size_t first = 0;   // manifest indices of the two images
    std::size_t second = 0;
};

struct SamplingRatio {
    std::uint32_t intra = 1;
    std::uint32_t extra = 7;

    static SamplingRatio parse(const std::string& s);  // "a:b"
    std::string to_string() const;
};

struct SamplingPolicy {
    SamplingRatio ratio;
    std::uint64_t seed = 42;
    bool keep_all_positives = true;

    void validate() const;
};

struct PairCounts {
    std::uint64_t total = 0;
    std::uint64_t intra = 0;
    std::uint64_t extra = 0;
};

/// Pair counts for C subjects with K images each.
PairCounts count_pairs(std::uint64_t subjects, std::uint64_t per_subject);

struct PairIndex {
    std::size_t first;
    std::size_t second;
    PairLabel label;
};

struct PairSelection {
    std::vector<PairIndex> pairs;  // intra pairs first (enumeration order), then sampled extras ascending
    std::size_t requested_extra = 0;
    std::size_t available_extra = 0;
    bool clamped = false;          // fewer extras available than requested
};

/// Chooses the pair indices only; no features are touched.
PairSelection select_pairs(const std::vector<int>& subject_ids, const SamplingPolicy& policy);

struct PairBuildResult {
    std::vector<PairSample> samples;
    PairSelection selection;
};

PairBuildResult build_pairs(const std::vector<GaborFeatureVector>& features,
                            const DatasetManifest& manifest, const SamplingPolicy& policy);

/// |a - b| elementwise.
FeatureVector abs_difference(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct AssembledSystem {
    AugmentedFeatureMatrix y;
    MarginVector margin;
    std::vector<int> labels;  // 1 intra, 0 extra, aligned with rows
};

/// Rows [1, x] for intra, -[1, x] for extra; margin from the preset over the
/// intra/extra labels.
AssembledSystem assemble_matrix(const std::vector<PairSample>& samples, const MarginPreset& margin);

}  // namespace sparsesel
