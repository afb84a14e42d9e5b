#include "sparsesel/csv.hpp"

#include <stdexcept>

namespace sparsesel {

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) i = 3;  // UTF-8 BOM

    auto end_record = [&] {
        row.push_back(std::move(field));
        field.clear();
        // A blank line is not a record.
        if (!(row.size() == 1 && row.front().empty() && !field_started)) rows.push_back(std::move(row));
        row.clear();
        field_started = false;
    };

    for (; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        switch (ch) {
        case '"':
            if (!field.empty()) throw std::invalid_argument("csv: quote inside unquoted field");
            quoted = true;
            field_started = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            field_started = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
            break;
        case '\n':
            end_record();
            break;
        default:
            field += ch;
            field_started = true;
        }
    }
    if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
    if (field_started || !field.empty() || !row.empty()) end_record();
    return rows;
}

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string csv_row(const CsvRow& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += csv_field(row[i]);
    }
    out += '\n';
    return out;
}

}  // namespace sparsesel
