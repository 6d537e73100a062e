#include "ftpinn/csv.hpp"

#include <charconv>
#include <system_error>

#include "ftpinn/errors.hpp"

namespace ftpinn::csv {
namespace {

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::string join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += fields[i];
    }
    return out;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        const auto piece = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
        fields.emplace_back(trim(piece));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

Table read_numeric(std::istream& in, const std::vector<std::string>& expected_header) {
    Table table;
    std::string line;
    std::size_t line_number = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split_line(line);
        if (!have_header) {
            if (fields != expected_header) {
                throw FormatError("line " + std::to_string(line_number) + ": expected header '" +
                                  join(expected_header) + "'");
            }
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw FormatError("line " + std::to_string(line_number) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& field = fields[i];
            const auto* begin = field.data();
            const auto* end = begin + field.size();
            const auto [ptr, ec] = std::from_chars(begin, end, row[i]);
            if (ec != std::errc() || ptr != end || field.empty()) {
                throw FormatError("line " + std::to_string(line_number) + ": cannot parse '" + field +
                                  "' in column " + table.header[i]);
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw FormatError("empty CSV input: missing header '" + join(expected_header) + "'");
    }
    return table;
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

}  // namespace ftpinn::csv
