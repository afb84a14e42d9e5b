#include "sparsesel/pairs.hpp"

#include "sparsesel/csv.hpp"
#include "sparsesel/io.hpp"
#include "sparsesel/rng.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sparsesel {

DatasetManifest::DatasetManifest(std::vector<ManifestEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("manifest: no entries");
    std::set<std::string> paths;
    std::map<std::string, int> ids;
    for (const auto& e : entries_) {
        if (e.path.empty()) throw std::invalid_argument("manifest: empty path");
        if (e.subject.empty()) throw std::invalid_argument("manifest: empty subject for " + e.path);
        if (!paths.insert(e.path).second) throw std::invalid_argument("manifest: duplicate path " + e.path);
        auto [it, inserted] = ids.emplace(e.subject, static_cast<int>(subjects_.size()));
        if (inserted) subjects_.push_back(e.subject);
        subject_ids_.push_back(it->second);
    }
}

DatasetManifest DatasetManifest::parse(const std::string& csv_text) {
    const auto rows = parse_csv(csv_text);
    if (rows.empty() || rows.front() != CsvRow{"path", "subject"})
        throw std::invalid_argument("manifest: expected header 'path,subject'");
    std::vector<ManifestEntry> entries;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
            throw std::invalid_argument("manifest: line " + std::to_string(i + 1) + " must have 2 fields");
        entries.push_back({rows[i][0], rows[i][1]});
    }
    return DatasetManifest(std::move(entries));
}

DatasetManifest DatasetManifest::read(const std::filesystem::path& path) {
    return parse(read_file(path));
}

std::size_t DatasetManifest::count_for(const std::string& subject) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                   [&](const ManifestEntry& e) { return e.subject == subject; }));
}

SamplingRatio SamplingRatio::parse(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("ratio must look like a:b, got '" + s + "'");
    try {
        const unsigned long a = std::stoul(s.substr(0, colon));
        const unsigned long b = std::stoul(s.substr(colon + 1));
        return SamplingRatio{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    } catch (const std::logic_error&) {
        throw std::invalid_argument("ratio must look like a:b, got '" + s + "'");
    }
}

std::string SamplingRatio::to_string() const {
    return std::to_string(intra) + ":" + std::to_string(extra);
}

void SamplingPolicy::validate() const {
    if (ratio.intra == 0 || ratio.extra == 0) throw std::invalid_argument("sampling ratio terms must be positive");
    // 1:1 <= intra:extra <= 1:10
    if (ratio.extra < ratio.intra || ratio.extra > 10ULL * ratio.intra)
        throw std::invalid_argument("sampling ratio " + ratio.to_string() + " outside 1:1 .. 1:10");
}

PairCounts count_pairs(std::uint64_t subjects, std::uint64_t per_subject) {
    const std::uint64_t images = subjects * per_subject;
    PairCounts c;
    c.total = images * (images - (images > 0 ? 1 : 0)) / 2;
    c.intra = per_subject > 0 ? subjects * per_subject * (per_subject - 1) / 2 : 0;
    c.extra = c.total - c.intra;
    return c;
}

PairSelection select_pairs(const std::vector<int>& subject_ids, const SamplingPolicy& policy) {
    policy.validate();
    PairSelection sel;
    std::vector<PairIndex> extras;
    for (std::size_t i = 0; i < subject_ids.size(); ++i) {
        for (std::size_t j = i + 1; j < subject_ids.size(); ++j) {
            if (subject_ids[i] == subject_ids[j]) {
                sel.pairs.push_back({i, j, PairLabel::intra});
            } else {
                extras.push_back({i, j, PairLabel::extra});
            }
        }
    }
    const std::size_t intra = sel.pairs.size();
    sel.available_extra = extras.size();
    sel.requested_extra = static_cast<std::size_t>(static_cast<std::uint64_t>(intra) * policy.ratio.extra /
                                                   policy.ratio.intra);
    const std::size_t take = std::min(sel.requested_extra, sel.available_extra);
    sel.clamped = take < sel.requested_extra;

    // Partial Fisher-Yates: the first `take` slots become a uniform sample.
    SplitMix64 rng(policy.seed);
    for (std::size_t k = 0; k < take; ++k) {
        const auto r = k + static_cast<std::size_t>(rng.below(extras.size() - k));
        std::swap(extras[k], extras[r]);
    }
    extras.resize(take);
    std::sort(extras.begin(), extras.end(), [](const PairIndex& l, const PairIndex& r) {
        return std::pair(l.first, l.second) < std::pair(r.first, r.second);
    });
    if (!policy.keep_all_positives) {
        // Balance by trimming positives to the same ratio against the drawn extras.
        const std::size_t want = static_cast<std::size_t>(static_cast<std::uint64_t>(take) * policy.ratio.intra /
                                                          policy.ratio.extra);
        if (want < intra) sel.pairs.resize(want);
    }
    sel.pairs.insert(sel.pairs.end(), extras.begin(), extras.end());
    return sel;
}

FeatureVector abs_difference(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    require_dim(static_cast<Index>(b.size()), static_cast<Index>(a.size()), "abs_difference");
    return FeatureVector((a - b).cwiseAbs());
}

PairBuildResult build_pairs(const std::vector<GaborFeatureVector>& features, const DatasetManifest& manifest,
                            const SamplingPolicy& policy) {
    require_dim(features.size(), manifest.size(), "build_pairs: features vs manifest entries");
    PairBuildResult out;
    out.selection = select_pairs(manifest.subject_ids(), policy);
    out.samples.reserve(out.selection.pairs.size());
    for (const auto& p : out.selection.pairs) {
        out.samples.push_back(PairSample{abs_difference(features[p.first].values, features[p.second].values),
                                         p.label, p.first, p.second});
    }
    return out;
}

AssembledSystem assemble_matrix(const std::vector<PairSample>& samples, const MarginPreset& margin) {
    if (samples.empty()) throw std::invalid_argument("assemble_matrix: no samples");
    std::vector<AugmentedSample> rows;
    std::vector<int> labels;
    rows.reserve(samples.size());
    for (const auto& s : samples) {
        const Label l = s.label == PairLabel::intra ? Label::positive : Label::negative;
        rows.push_back(AugmentedSample::augment(s.feature, l).with_sign_applied());
        labels.push_back(s.label == PairLabel::intra ? 1 : 0);
    }
    auto y = AugmentedFeatureMatrix::from_samples(rows);
    auto b = make_margin(margin, labels);
    return AssembledSystem{std::move(y), std::move(b), std::move(labels)};
}

}  // namespace sparsesel
