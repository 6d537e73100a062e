#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace ftpinn::csv {

/// A numeric CSV table: one header row, then rows of doubles.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::vector<std::string> split_line(std::string_view line);

/// Reads a header plus numeric rows. Blank lines are skipped. A row with the
/// wrong field count or an unparsable number raises FormatError naming the
/// 1-based line number.
Table read_numeric(std::istream& in, const std::vector<std::string>& expected_header);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

}  // namespace ftpinn::csv
