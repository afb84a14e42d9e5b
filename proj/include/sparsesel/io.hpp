#pragma once

// File formats.
//
//   PGM     binary P5 grayscale, maxval <= 255; pixels scaled to [0, 1] by /255
//   GFV1    one feature vector: "GFV1", u32 length, u32 downsample, u32 reserved (0),
//           then `length` little-endian f64
//   archive concatenated GFV1 records plus "<archive>.index.csv" (record,path,subject)
//   SPPM    signed augmented pair matrix: "SPPM", u32 n, u32 d+1, row-major
//           little-endian f64, then n label bytes (0 = extra, 1 = intra)

#include "sparsesel/gabor.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsesel {

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Image parse_pgm(const std::string& bytes, const std::string& name = "<memory>");
Image read_pgm(const std::filesystem::path& path);
/// Writes `image` (values in [0, 1]) as 8-bit P5, rounding to nearest.
void write_pgm(const std::filesystem::path& path, const Image& image);

void write_gfv1(std::ostream& out, const GaborFeatureVector& fv);
GaborFeatureVector read_gfv1(std::istream& in);

struct FeatureRecord {
    std::string path;
    std::string subject;
    GaborFeatureVector features;
};

struct FeatureArchive {
    std::vector<FeatureRecord> records;

    std::size_t dimension() const;
    void write(const std::filesystem::path& path) const;
    static FeatureArchive read(const std::filesystem::path& path);
    static std::filesystem::path index_path(const std::filesystem::path& path);
};

struct PairMatrix {
    Eigen::MatrixXd y;                  // n x (d+1), signed augmented rows
    std::vector<std::uint8_t> labels;   // 1 = intra, 0 = extra

    void write(const std::filesystem::path& path) const;
    static PairMatrix read(const std::filesystem::path& path);
};

/// Shortest decimal that round-trips exactly; always '.' as separator.
std::string format_double(double v);
double parse_double(const std::string& s);

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

std::string read_file(const std::filesystem::path& path);

}  // namespace sparsesel
