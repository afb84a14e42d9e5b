#pragma once

#include "sparsesel/io.hpp"
#include "sparsesel/pairs.hpp"

#include <ostream>

namespace sparsesel::cli {

struct SampledPairs {
    PairMatrix matrix;
    PairSelection selection;
};

// Samples pairs from an archive and stacks them into the signed pair matrix.
inline SampledPairs sample_pairs(const FeatureArchive& archive, const SamplingPolicy& policy, std::ostream& err) {
    std::vector<ManifestEntry> entries;
    std::vector<GaborFeatureVector> features;
    for (const auto& r : archive.records) {
        entries.push_back({r.path, r.subject});
        features.push_back(r.features);
    }
    const DatasetManifest manifest(std::move(entries));
    PairBuildResult built = build_pairs(features, manifest, policy);
    if (built.selection.clamped) {
        err << "warning: requested " << built.selection.requested_extra << " extra pairs, only "
            << built.selection.available_extra << " available\n";
    }
    if (built.samples.empty()) throw std::runtime_error("no pairs could be formed (need at least two images per subject)");
    const AssembledSystem sys = assemble_matrix(built.samples, MarginPreset{});
    SampledPairs out;
    out.matrix.y = sys.y.matrix();
    for (int l : sys.labels) out.matrix.labels.push_back(static_cast<std::uint8_t>(l));
    out.selection = std::move(built.selection);
    return out;
}

}  // namespace sparsesel::cli
