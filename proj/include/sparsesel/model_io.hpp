#pragma once

// SelectionModel text format (UTF-8, LF line endings):
//
//   SPARSESEL v1
//   method <ssmes|sfisher|shk> solver <mp|omp|l1>
//   dim <d> nnz <k> bias <decimal>
//   <index> <decimal weight>          (k lines, ascending index)
//   provenance seed=<u64> ratio=<a>:<b> digest=<hex64>
//
// Decimals use the shortest representation that parses back to the same double.

#include "sparsesel/classifiers.hpp"

#include <filesystem>
#include <string>

namespace sparsesel {

std::string format_model(const SelectionModel& model);
SelectionModel parse_model(const std::string& text);

void write_model(const std::filesystem::path& path, const SelectionModel& model);
SelectionModel read_model(const std::filesystem::path& path);

/// Platform-independent digest of a signed pair matrix and its labels
/// (FNV-1a over little-endian f64 bytes followed by the label bytes).
std::uint64_t digest_pair_matrix(const Matrix& y, const std::vector<int>& labels);

}  // namespace sparsesel
