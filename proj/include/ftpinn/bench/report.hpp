#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ftpinn/bench/accuracy.hpp"
#include "ftpinn/bench/timing.hpp"

namespace ftpinn::bench {

struct ReportMetadata {
    std::string hardware;
    std::string precision;
    unsigned threads = 1;
    int grid_points_per_axis = 0;
    std::size_t evaluated_points = 0;
    std::size_t excluded_points = 0;
    std::string alpha_pooling = "all carbon numbers and all grid points";

    friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct BenchReport {
    ReportMetadata metadata;
    std::vector<ErrorStats> errors;
    std::optional<double> t_conv;
    std::vector<TimingRecord> timing;

    friend bool operator==(const BenchReport&, const BenchReport&) = default;
};

enum class ReportFormat { Json, Csv };

ReportFormat parse_report_format(const std::string& text);

/// Picks the format from the extension: .csv gives CSV, anything else JSON.
ReportFormat format_for(const std::filesystem::path& path);

std::string to_json(const BenchReport& report);
BenchReport parse_report_json(const std::string& text);
void write_csv(std::ostream& out, const BenchReport& report);

/// Throws Error with the path when the file cannot be written.
void write_report(const BenchReport& report, const std::filesystem::path& path, ReportFormat format);

/// Per-point CSV: x_pCO,x_pH2,x_pH2O,x_T,S_true,S_pred,error_pct.
void write_point_dump(std::ostream& out, const std::vector<PointError>& points);

}  // namespace ftpinn::bench
