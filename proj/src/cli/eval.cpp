#include "sparsesel/cli.hpp"

#include "common.hpp"
#include "sparsesel/classifiers.hpp"
#include "sparsesel/csv.hpp"
#include "sparsesel/io.hpp"
#include "sparsesel/model_io.hpp"

#include <fstream>
#include <map>

namespace sparsesel::cli {

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& /*err*/) {
    const DistanceKind dist = parse_distance(opt.distance);
    if (opt.classifier != "nnc" && opt.classifier != "mmc" && opt.classifier != "fc")
        throw std::invalid_argument("eval: --classifier must be nnc, mmc or fc");
    emit_config({{"command", "eval"},
                 {"model", opt.model},
                 {"gallery", opt.gallery},
                 {"probe", opt.probe},
                 {"classifier", opt.classifier},
                 {"distance", opt.classifier == "fc" ? std::string("cosine") : opt.distance},
                 {"predictions", opt.predictions}},
                opt.predictions, out);

    const SelectionModel model = read_model(opt.model);
    const FeatureArchive gallery = FeatureArchive::read(opt.gallery);
    const FeatureArchive probes = FeatureArchive::read(opt.probe);
    if (gallery.records.empty()) throw std::invalid_argument("eval: empty gallery");
    if (probes.records.empty()) throw std::invalid_argument("eval: empty probe set");
    if (gallery.dimension() != model.dim || probes.dimension() != model.dim)
        throw dimension_error("eval: model expects dimension " + std::to_string(model.dim) + ", gallery has " +
                              std::to_string(gallery.dimension()) + ", probes have " +
                              std::to_string(probes.dimension()));

    std::map<std::string, int> subject_id;
    std::vector<std::string> subject_name;
    auto id_of = [&](const std::string& s) {
        auto [it, inserted] = subject_id.emplace(s, static_cast<int>(subject_name.size()));
        if (inserted) subject_name.push_back(s);
        return it->second;
    };

    std::vector<GalleryEntry> entries;
    for (const auto& r : gallery.records) entries.push_back({model.reduce(r.features.values), id_of(r.subject)});

    FisherModel fisher;
    if (opt.classifier == "fc") {
        std::vector<Vector> xs;
        std::vector<int> ys;
        for (const auto& e : entries) {
            xs.push_back(e.features);
            ys.push_back(e.subject);
        }
        const std::size_t classes = subject_name.size();
        if (classes < 2) throw std::invalid_argument("eval: Fisher classifier needs at least two gallery subjects");
        fisher = fisher_fit(xs, ys, std::min(classes - 1, model.support.size()));
    }

    std::ofstream pred(opt.predictions, std::ios::binary);
    if (!pred) throw std::runtime_error("cannot write " + opt.predictions);
    pred << csv_row({"probe", "path", "subject", "predicted", "score", "correct"});

    std::size_t correct = 0;
    for (std::size_t i = 0; i < probes.records.size(); ++i) {
        const auto& r = probes.records[i];
        const Vector x = model.reduce(r.features.values);
        int predicted = 0;
        double score = 0.0;
        if (opt.classifier == "nnc") {
            const NnResult nn = nnc_classify(entries, x, dist);
            predicted = nn.subject;
            score = nn.distance;
        } else if (opt.classifier == "mmc") {
            const MmcResult mm = mmc_classify(model, entries, x);
            predicted = mm.subject;
            score = mm.score;
        } else {
            predicted = fisher.classify(x);
        }
        const std::string& name = subject_name[static_cast<std::size_t>(predicted)];
        const bool ok = name == r.subject;
        correct += ok ? 1 : 0;
        pred << csv_row({std::to_string(i), r.path, r.subject, name, format_double(score), ok ? "1" : "0"});
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(probes.records.size());
    out << "accuracy=" << format_double(accuracy) << " n=" << probes.records.size() << "\n";
    return 0;
}

}  // namespace sparsesel::cli
