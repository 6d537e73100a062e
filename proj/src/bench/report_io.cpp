#include "ftpinn/bench/report.hpp"

#include <fstream>

#include <json.hpp>

#include "ftpinn/csv.hpp"
#include "ftpinn/errors.hpp"

namespace ftpinn::bench {
namespace {

using ordered_json = nlohmann::ordered_json;

template <typename U>
U get(const ordered_json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(std::string("report: missing field '") + key + "'");
    }
    try {
        return it->get<U>();
    } catch (const ordered_json::exception&) {
        throw FormatError(std::string("report: field '") + key + "' has the wrong type");
    }
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "json") {
        return ReportFormat::Json;
    }
    if (text == "csv") {
        return ReportFormat::Csv;
    }
    throw FormatError("report format must be 'json' or 'csv', got '" + text + "'");
}

ReportFormat format_for(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? ReportFormat::Csv : ReportFormat::Json;
}

std::string to_json(const BenchReport& report) {
    ordered_json errors = ordered_json::array();
    for (const auto& e : report.errors) {
        errors.push_back({{"quantity", e.quantity},
                          {"mean_pct", e.mean},
                          {"median_pct", e.median},
                          {"max_pct", e.max},
                          {"count", e.count}});
    }
    ordered_json timing = ordered_json::array();
    for (const auto& t : report.timing) {
        timing.push_back({{"backend", t.backend},
                          {"batch_size", t.batch_size},
                          {"seconds_per_batch", t.seconds_per_batch},
                          {"repetitions", t.repetitions},
                          {"baseline_seconds", t.baseline_seconds},
                          {"speedup", t.speedup}});
    }
    const auto& m = report.metadata;
    ordered_json obj;
    obj["schema_version"] = 1;
    obj["metadata"] = {{"hardware", m.hardware},
                       {"precision", m.precision},
                       {"threads", m.threads},
                       {"grid_points_per_axis", m.grid_points_per_axis},
                       {"evaluated_points", m.evaluated_points},
                       {"excluded_points", m.excluded_points},
                       {"alpha_pooling", m.alpha_pooling}};
    obj["errors"] = std::move(errors);
    obj["t_conv_seconds"] = report.t_conv ? ordered_json(*report.t_conv) : ordered_json(nullptr);
    obj["timing"] = std::move(timing);
    return obj.dump(2);
}

BenchReport parse_report_json(const std::string& text) {
    ordered_json obj;
    try {
        obj = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw FormatError(std::string("report: malformed JSON: ") + e.what());
    }
    if (get<int>(obj, "schema_version") != 1) {
        throw FormatError("report: unsupported schema_version");
    }
    BenchReport report;
    const auto& m = obj.at("metadata");
    report.metadata.hardware = get<std::string>(m, "hardware");
    report.metadata.precision = get<std::string>(m, "precision");
    report.metadata.threads = get<unsigned>(m, "threads");
    report.metadata.grid_points_per_axis = get<int>(m, "grid_points_per_axis");
    report.metadata.evaluated_points = get<std::size_t>(m, "evaluated_points");
    report.metadata.excluded_points = get<std::size_t>(m, "excluded_points");
    report.metadata.alpha_pooling = get<std::string>(m, "alpha_pooling");
    for (const auto& e : obj.at("errors")) {
        report.errors.push_back({get<std::string>(e, "quantity"), get<double>(e, "mean_pct"),
                                 get<double>(e, "median_pct"), get<double>(e, "max_pct"),
                                 get<std::size_t>(e, "count")});
    }
    if (const auto& t = obj.at("t_conv_seconds"); !t.is_null()) {
        report.t_conv = t.get<double>();
    }
    for (const auto& t : obj.at("timing")) {
        report.timing.push_back({get<std::string>(t, "backend"), get<std::size_t>(t, "batch_size"),
                                 get<double>(t, "seconds_per_batch"), get<int>(t, "repetitions"),
                                 get<double>(t, "baseline_seconds"), get<double>(t, "speedup")});
    }
    return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
    using csv::format_double;
    out << "section,label,mean_pct,median_pct,max_pct,count,batch_size,seconds_per_batch,repetitions,"
           "baseline_seconds,speedup\n";
    for (const auto& e : report.errors) {
        out << "error," << e.quantity << ',' << format_double(e.mean) << ',' << format_double(e.median) << ','
            << format_double(e.max) << ',' << e.count << ",,,,,\n";
    }
    for (const auto& t : report.timing) {
        out << "timing," << t.backend << ",,,,," << t.batch_size << ',' << format_double(t.seconds_per_batch)
            << ',' << t.repetitions << ',' << format_double(t.baseline_seconds) << ','
            << format_double(t.speedup) << '\n';
    }
}

void write_report(const BenchReport& report, const std::filesystem::path& path, ReportFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open report " + path.string() + " for writing");
    }
    if (format == ReportFormat::Json) {
        out << to_json(report) << '\n';
    } else {
        write_csv(out, report);
    }
    if (!out) {
        throw Error("failed writing report " + path.string());
    }
}

void write_point_dump(std::ostream& out, const std::vector<PointError>& points) {
    using csv::format_double;
    out << "x_pCO,x_pH2,x_pH2O,x_T,S_true,S_pred,error_pct\n";
    for (const auto& p : points) {
        out << format_double(p.point[0]) << ',' << format_double(p.point[1]) << ',' << format_double(p.point[2])
            << ',' << format_double(p.point[3]) << ',' << format_double(p.s_true) << ','
            << format_double(p.s_pred) << ',' << format_double(p.error_percent) << '\n';
    }
}

}  // namespace ftpinn::bench
