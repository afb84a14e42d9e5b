#pragma once

// Minimal RFC-4180 CSV: quoted fields, doubled quotes, CRLF or LF records.

#include <string>
#include <vector>

namespace sparsesel {

using CsvRow = std::vector<std::string>;

std::vector<CsvRow> parse_csv(const std::string& text);

/// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_field(const std::string& field);

std::string csv_row(const CsvRow& row);

}  // namespace sparsesel
