#include "sparsesel/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sparsesel {

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(const std::string& bytes, std::size_t& pos) {
    while (pos < bytes.size()) {
        const char ch = bytes[pos];
        if (ch == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            ++pos;
        } else {
            break;
        }
    }
    std::string tok;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) tok += bytes[pos++];
    return tok;
}

int parse_header_int(const std::string& tok, const std::string& name, const char* field) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw format_error(name + ": malformed PGM " + field);
    return std::stoi(tok);
}

}  // namespace

Image parse_pgm(const std::string& bytes, const std::string& name) {
    std::size_t pos = 0;
    const std::string magic = next_token(bytes, pos);
    if (magic != "P5")
        throw format_error(name + ": not a binary PGM (P5) image (magic '" + magic.substr(0, 2) + "')");
    const int width = parse_header_int(next_token(bytes, pos), name, "width");
    const int height = parse_header_int(next_token(bytes, pos), name, "height");
    const int maxval = parse_header_int(next_token(bytes, pos), name, "maxval");
    if (width < 1 || height < 1) throw format_error(name + ": empty PGM image");
    if (maxval < 1 || maxval > 255) throw format_error(name + ": only 8-bit PGM is supported");
    ++pos;  // single whitespace byte after maxval
    const auto need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() < pos + need) throw format_error(name + ": truncated PGM pixel data");

    Image img(height, width);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            img(r, c) = static_cast<unsigned char>(bytes[pos + static_cast<std::size_t>(r) * width + c]) / 255.0;
    return img;
}

Image read_pgm(const std::filesystem::path& path) {
    return parse_pgm(read_file(path), path.string());
}

void write_pgm(const std::filesystem::path& path, const Image& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "P5\n" << image.cols() << ' ' << image.rows() << "\n255\n";
    for (int r = 0; r < image.rows(); ++r) {
        for (int c = 0; c < image.cols(); ++c) {
            const double v = std::clamp(image(r, c), 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
        }
    }
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sparsesel
