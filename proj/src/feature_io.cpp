#include "sparsesel/io.hpp"

#include "sparsesel/csv.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace sparsesel {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    std::array<char, 4> b{};
    for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(b.data(), 8);
}

void get_exact(std::istream& in, char* dst, std::size_t n, const char* what) {
    in.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) throw format_error(std::string("truncated ") + what);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
    std::array<unsigned char, 4> b{};
    get_exact(in, reinterpret_cast<char*>(b.data()), 4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
}

double get_f64(std::istream& in, const char* what) {
    std::array<unsigned char, 8> b{};
    get_exact(in, reinterpret_cast<char*>(b.data()), 8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return std::bit_cast<double>(v);
}

void expect_magic(std::istream& in, const char* magic, const char* what) {
    std::array<char, 4> m{};
    get_exact(in, m.data(), 4, what);
    if (std::memcmp(m.data(), magic, 4) != 0)
        throw format_error(std::string(what) + ": bad magic, expected '" + magic + "'");
}

}  // namespace

void write_gfv1(std::ostream& out, const GaborFeatureVector& fv) {
    out.write("GFV1", 4);
    put_u32(out, static_cast<std::uint32_t>(fv.values.size()));
    put_u32(out, static_cast<std::uint32_t>(fv.downsample));
    put_u32(out, 0);
    for (Eigen::Index i = 0; i < fv.values.size(); ++i) put_f64(out, fv.values(i));
}

GaborFeatureVector read_gfv1(std::istream& in) {
    expect_magic(in, "GFV1", "GFV1 record");
    const std::uint32_t length = get_u32(in, "GFV1 header");
    const std::uint32_t downsample = get_u32(in, "GFV1 header");
    get_u32(in, "GFV1 header");
    GaborFeatureVector fv;
    fv.downsample = static_cast<int>(downsample);
    fv.values.resize(length);
    for (std::uint32_t i = 0; i < length; ++i) fv.values(i) = get_f64(in, "GFV1 payload");
    if (length == gabor_feature_length(kFaceSize, kFaceSize)) {
        fv.lattice_rows = kFaceSize / kLatticeStride;
        fv.lattice_cols = kFaceSize / kLatticeStride;
    }
    return fv;
}

std::size_t FeatureArchive::dimension() const {
    if (records.empty()) return 0;
    return records.front().features.size();
}

std::filesystem::path FeatureArchive::index_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".index.csv");
}

void FeatureArchive::write(const std::filesystem::path& path) const {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        for (const auto& r : records) write_gfv1(out, r.features);
        if (!out) throw std::runtime_error("failed writing " + path.string());
    }
    std::ofstream idx(index_path(path), std::ios::binary);
    if (!idx) throw std::runtime_error("cannot write " + index_path(path).string());
    idx << csv_row({"record", "path", "subject"});
    for (std::size_t i = 0; i < records.size(); ++i)
        idx << csv_row({std::to_string(i), records[i].path, records[i].subject});
}

FeatureArchive FeatureArchive::read(const std::filesystem::path& path) {
    const auto rows = parse_csv(read_file(index_path(path)));
    if (rows.empty() || rows.front() != CsvRow{"record", "path", "subject"})
        throw format_error(index_path(path).string() + ": missing header record,path,subject");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    FeatureArchive archive;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 3) throw format_error(index_path(path).string() + ": malformed row " + std::to_string(i));
        archive.records.push_back(FeatureRecord{rows[i][1], rows[i][2], read_gfv1(in)});
    }
    if (in.peek() != std::char_traits<char>::eof())
        throw format_error(path.string() + ": more records than index entries");
    return archive;
}

void PairMatrix::write(const std::filesystem::path& path) const {
    if (labels.size() != static_cast<std::size_t>(y.rows()))
        throw std::invalid_argument("PairMatrix: label count does not match rows");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write("SPPM", 4);
    put_u32(out, static_cast<std::uint32_t>(y.rows()));
    put_u32(out, static_cast<std::uint32_t>(y.cols()));
    for (Eigen::Index i = 0; i < y.rows(); ++i)
        for (Eigen::Index j = 0; j < y.cols(); ++j) put_f64(out, y(i, j));
    out.write(reinterpret_cast<const char*>(labels.data()), static_cast<std::streamsize>(labels.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

PairMatrix PairMatrix::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    expect_magic(in, "SPPM", "SPPM file");
    const std::uint32_t n = get_u32(in, "SPPM header");
    const std::uint32_t cols = get_u32(in, "SPPM header");
    PairMatrix pm;
    pm.y.resize(n, cols);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < cols; ++j) pm.y(i, j) = get_f64(in, "SPPM payload");
    pm.labels.resize(n);
    get_exact(in, reinterpret_cast<char*>(pm.labels.data()), n, "SPPM labels");
    for (auto l : pm.labels)
        if (l > 1) throw format_error(path.string() + ": label byte must be 0 or 1");
    return pm;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw format_error("not a decimal number: '" + s + "'");
    return v;
}

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[v & 0xF];
        v >>= 4;
    }
    return s;
}

}  // namespace sparsesel
