#include "sparsesel/cli.hpp"

#include "common.hpp"
#include "sparsesel/gabor.hpp"
#include "sparsesel/io.hpp"
#include "sparsesel/pairs.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

namespace sparsesel::cli {

namespace fs = std::filesystem;

namespace {

std::vector<ManifestEntry> scan_directory(const fs::path& dir) {
    std::vector<ManifestEntry> entries;
    for (const auto& de : fs::directory_iterator(dir)) {
        if (!de.is_regular_file() || de.path().extension() != ".pgm") continue;
        const std::string stem = de.path().stem().string();
        entries.push_back({de.path().filename().string(), stem.substr(0, stem.find('_'))});
    }
    std::sort(entries.begin(), entries.end(),
              [](const ManifestEntry& l, const ManifestEntry& r) { return l.path < r.path; });
    return entries;
}

}  // namespace

int cmd_extract(const ExtractOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.manifest.empty() == opt.image_dir.empty())
        throw std::invalid_argument("extract: give exactly one of --manifest or --image-dir");

    fs::path base;
    std::vector<ManifestEntry> entries;
    if (!opt.manifest.empty()) {
        const auto manifest = DatasetManifest::read(opt.manifest);
        entries = manifest.entries();
        base = fs::path(opt.manifest).parent_path();
    } else {
        base = opt.image_dir;
        entries = scan_directory(base);
        if (entries.empty()) throw std::invalid_argument("extract: no .pgm files in " + opt.image_dir);
        DatasetManifest check(entries);  // validates uniqueness
    }

    emit_config({{"command", "extract"},
                 {"manifest", opt.manifest},
                 {"image_dir", opt.image_dir},
                 {"out", opt.out},
                 {"continue_on_error", opt.continue_on_error},
                 {"gabor", {{"sigma", "2*pi"}, {"kmax", "pi/2"}, {"f", "sqrt(2)"}, {"scales", "-1..2"},
                            {"orientations", 8}, {"stride", kLatticeStride}}}},
                opt.out, out);

    const GaborBank bank = GaborBank::standard();
    FeatureArchive archive;
    std::size_t failures = 0;
    for (const auto& e : entries) {
        const fs::path p = fs::path(e.path).is_absolute() ? fs::path(e.path) : base / e.path;
        try {
            archive.records.push_back({e.path, e.subject, extract_features(read_pgm(p), bank)});
        } catch (const std::exception& ex) {
            if (!opt.continue_on_error) throw std::runtime_error(p.string() + ": " + ex.what());
            err << "skipped " << p.string() << ": " << ex.what() << "\n";
            ++failures;
        }
    }
    if (archive.records.empty()) throw std::runtime_error("extract: no image could be processed");
    archive.write(opt.out);
    out << "records=" << archive.records.size() << " dim=" << archive.dimension() << " skipped=" << failures << "\n";
    return failures == 0 ? 0 : 2;
}

}  // namespace sparsesel::cli
