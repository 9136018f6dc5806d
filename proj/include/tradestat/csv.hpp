#ifndef TRADESTAT_CSV_HPP
#define TRADESTAT_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tradestat {

// Minimal CSV support for the table shapes this tool reads and writes:
// UTF-8, comma separated, '.' decimal point, one header row, no embedded
// newlines. Quoted fields (RFC-4180 style, "" escapes) are accepted on read.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // Original 1-based line number per data row, for error messages.
    std::vector<std::size_t> line_numbers;

    std::optional<std::size_t> column(std::string_view name) const;
    // Like column() but throws DataError naming the file when missing.
    std::size_t require_column(std::string_view name, const std::filesystem::path& source) const;
};

// Reads a whole file. Throws DataError on missing file, missing header or
// ragged rows. Blank lines are skipped. A UTF-8 BOM and CRLF endings are
// tolerated.
CsvTable read_csv(const std::filesystem::path& path);

// Writes header + rows. Fields containing comma, quote or newline get quoted.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Shortest decimal string that round-trips to the same double. Used for all
// numeric CSV output so that written files can be re-read bit-exactly.
std::string format_double(double value);

// Strict parsers with location-bearing error messages. `line` is 1-based.
double parse_double_field(std::string_view field, std::string_view column_name,
                          std::size_t line, const std::filesystem::path& source);
long parse_long_field(std::string_view field, std::string_view column_name,
                      std::size_t line, const std::filesystem::path& source);

} // namespace tradestat

#endif
