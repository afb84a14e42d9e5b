#include "sparsesel/model_io.hpp"

#include "sparsesel/io.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <sstream>

namespace sparsesel {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) lines.push_back(std::move(cur));
    return lines;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream ss(line);
    std::string w;
    while (ss >> w) words.push_back(w);
    return words;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw format_error("model: bad " + what + " '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::out_of_range&) {
        throw format_error("model: " + what + " out of range");
    }
}

std::string after_prefix(const std::string& word, const std::string& prefix) {
    if (word.rfind(prefix, 0) != 0) throw format_error("model: expected '" + prefix + "...', got '" + word + "'");
    return word.substr(prefix.size());
}

}  // namespace

std::string format_model(const SelectionModel& model) {
    model.validate();
    std::string out = "SPARSESEL v1\n";
    out += "method " + to_string(model.method) + " solver " + to_string(model.solver) + "\n";
    out += "dim " + std::to_string(model.dim) + " nnz " + std::to_string(model.support.size()) + " bias " +
           format_double(model.bias) + "\n";
    for (std::size_t k = 0; k < model.support.size(); ++k)
        out += std::to_string(model.support[k]) + " " + format_double(model.weights[k]) + "\n";
    out += "provenance seed=" + std::to_string(model.provenance.seed) + " ratio=" +
           std::to_string(model.provenance.ratio_intra) + ":" + std::to_string(model.provenance.ratio_extra) +
           " digest=" + hex64(model.provenance.digest) + "\n";
    return out;
}

SelectionModel parse_model(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.size() < 4) throw format_error("model: too few lines");
    if (lines[0] != "SPARSESEL v1") throw format_error("model: missing 'SPARSESEL v1' header");

    SelectionModel m;
    const auto l2 = split_words(lines[1]);
    if (l2.size() != 4 || l2[0] != "method" || l2[2] != "solver") throw format_error("model: malformed method line");
    try {
        m.method = parse_selection_method(l2[1]);
        m.solver = parse_selection_solver(l2[3]);
    } catch (const std::invalid_argument& ex) {
        throw format_error(std::string("model: ") + ex.what());
    }

    const auto l3 = split_words(lines[2]);
    if (l3.size() != 6 || l3[0] != "dim" || l3[2] != "nnz" || l3[4] != "bias")
        throw format_error("model: malformed dim line");
    m.dim = parse_u64(l3[1], "dim");
    const std::uint64_t nnz = parse_u64(l3[3], "nnz");
    m.bias = parse_double(l3[5]);
    if (lines.size() != 4 + nnz) throw format_error("model: expected " + std::to_string(nnz) + " weight lines");

    for (std::uint64_t k = 0; k < nnz; ++k) {
        const auto w = split_words(lines[3 + k]);
        if (w.size() != 2) throw format_error("model: malformed weight line " + std::to_string(k + 1));
        m.support.push_back(parse_u64(w[0], "index"));
        m.weights.push_back(parse_double(w[1]));
    }

    const auto lp = split_words(lines.back());
    if (lp.size() != 4 || lp[0] != "provenance") throw format_error("model: malformed provenance line");
    m.provenance.seed = parse_u64(after_prefix(lp[1], "seed="), "seed");
    const std::string ratio = after_prefix(lp[2], "ratio=");
    const auto colon = ratio.find(':');
    if (colon == std::string::npos) throw format_error("model: malformed ratio");
    m.provenance.ratio_intra = static_cast<std::uint32_t>(parse_u64(ratio.substr(0, colon), "ratio"));
    m.provenance.ratio_extra = static_cast<std::uint32_t>(parse_u64(ratio.substr(colon + 1), "ratio"));
    const std::string digest = after_prefix(lp[3], "digest=");
    if (digest.size() != 16 || digest.find_first_not_of("0123456789abcdef") != std::string::npos)
        throw format_error("model: digest must be 16 lowercase hex digits");
    m.provenance.digest = std::stoull(digest, nullptr, 16);

    try {
        m.validate();
    } catch (const std::invalid_argument& ex) {
        throw format_error(std::string("model: ") + ex.what());
    }
    return m;
}

void write_model(const std::filesystem::path& path, const SelectionModel& model) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << format_model(model);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

SelectionModel read_model(const std::filesystem::path& path) {
    return parse_model(read_file(path));
}

std::uint64_t digest_pair_matrix(const Matrix& y, const std::vector<int>& labels) {
    std::uint64_t h = fnv1a64(nullptr, 0);
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) {
            const auto bits = std::bit_cast<std::uint64_t>(y(i, j));
            std::array<unsigned char, 8> b{};
            for (int k = 0; k < 8; ++k) b[static_cast<std::size_t>(k)] = static_cast<unsigned char>(bits >> (8 * k));
            h = fnv1a64(b.data(), b.size(), h);
        }
    }
    for (int l : labels) {
        const auto byte = static_cast<unsigned char>(l);
        h = fnv1a64(&byte, 1, h);
    }
    return h;
}

}  // namespace sparsesel
