#include "tradestat/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tradestat/errors.hpp"

namespace tradestat {

namespace {

// Splits one CSV line. Handles quoted fields with "" escapes; does not
// handle embedded newlines (none of our tables need them).
std::vector<std::string> split_line(const std::string& line, std::size_t line_no,
                                    const std::filesystem::path& source) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_quotes)
        throw DataError(source.string() + ":" + std::to_string(line_no) +
                        ": unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n") != std::string::npos;
}

} // namespace

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name,
                                     const std::filesystem::path& source) const {
    auto idx = column(name);
    if (!idx)
        throw DataError(source.string() + ": missing required column '" + std::string(name) + "'");
    return *idx;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open file: " + path.string());

    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line_no == 1 && line.size() >= 3 &&
            static_cast<unsigned char>(line[0]) == 0xEF &&
            static_cast<unsigned char>(line[1]) == 0xBB &&
            static_cast<unsigned char>(line[2]) == 0xBF)
            line.erase(0, 3);
        if (line.empty())
            continue;
        auto fields = split_line(line, line_no, path);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size())
            throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header)
        throw DataError(path.string() + ": empty file, header row required");
    return table;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot open file for writing: " + path.string());
    auto write_row = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                out << ',';
            if (needs_quoting(fields[i])) {
                out << '"';
                for (char c : fields[i]) {
                    if (c == '"')
                        out << '"';
                    out << c;
                }
                out << '"';
            } else {
                out << fields[i];
            }
        }
        out << '\n';
    };
    write_row(header);
    for (const auto& row : rows)
        write_row(row);
    if (!out)
        throw DataError("write failed: " + path.string());
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double_field(std::string_view field, std::string_view column_name,
                          std::size_t line, const std::filesystem::path& source) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw DataError(source.string() + ":" + std::to_string(line) + ": column '" +
                        std::string(column_name) + "': cannot parse '" + std::string(field) +
                        "' as a number");
    return value;
}

long parse_long_field(std::string_view field, std::string_view column_name,
                      std::size_t line, const std::filesystem::path& source) {
    long value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw DataError(source.string() + ":" + std::to_string(line) + ": column '" +
                        std::string(column_name) + "': cannot parse '" + std::string(field) +
                        "' as an integer");
    return value;
}

} // namespace tradestat
