#include "sparsesel/cli.hpp"

#include "common.hpp"
#include "sparsesel/rng.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace sparsesel::cli {

int cmd_synth(const SynthParams& params, const std::string& report, std::ostream& out, std::ostream& /*err*/) {
    emit_config({{"command", "synth"},
                 {"seed", params.seed},
                 {"rng", SplitMix64::name},
                 {"instances", params.instances},
                 {"n", params.rows},
                 {"d", params.cols},
                 {"k", params.k},
                 {"coherence", params.effective_coherence()},
                 {"oracle_max_support", params.oracle_max_support},
                 {"l1_instances", params.l1_instances},
                 {"l1_n", params.l1_rows},
                 {"l1_d", params.l1_cols},
                 {"shk_instances", params.shk_instances},
                 {"report", report}},
                report, out);
    const SynthReport rep = run_synthetic_verification(params);
    std::ostringstream text;
    rep.print(text);
    out << text.str();
    if (!report.empty()) {
        std::ofstream f(report, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + report);
        f << text.str();
    }
    return rep.passed() ? 0 : 1;
}

}  // namespace sparsesel::cli
