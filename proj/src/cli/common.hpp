#pragma once

#include <json.hpp>

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sparsesel::cli {

// Prints the fully resolved configuration and, when the command has an output
// file, stores it next to it as <output>.config.json.
inline void emit_config(const nlohmann::json& config, const std::string& output, std::ostream& out) {
    out << "config " << config.dump() << "\n";
    if (output.empty()) return;
    std::ofstream f(output + ".config.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + output + ".config.json");
    f << config.dump(2) << "\n";
}

}  // namespace sparsesel::cli
