#include "sparsesel/cli.hpp"

#include "common.hpp"
#include "pipeline.hpp"
#include "sparsesel/rng.hpp"

namespace sparsesel::cli {

int cmd_pairs(const PairsOptions& opt, std::ostream& out, std::ostream& err) {
    SamplingPolicy policy{SamplingRatio::parse(opt.ratio), opt.seed, true};
    policy.validate();
    emit_config({{"command", "pairs"},
                 {"features", opt.features},
                 {"ratio", policy.ratio.to_string()},
                 {"seed", opt.seed},
                 {"rng", SplitMix64::name},
                 {"out", opt.out}},
                opt.out, out);

    const auto archive = FeatureArchive::read(opt.features);
    const SampledPairs sp = sample_pairs(archive, policy, err);
    sp.matrix.write(opt.out);
    std::size_t intra = 0;
    for (auto l : sp.matrix.labels) intra += l;
    out << "rows=" << sp.matrix.y.rows() << " cols=" << sp.matrix.y.cols() << " intra=" << intra
        << " extra=" << sp.matrix.labels.size() - intra << "\n";
    return 0;
}

}  // namespace sparsesel::cli
