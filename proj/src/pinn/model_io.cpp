#include "ftpinn/pinn/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ftpinn/errors.hpp"

namespace ftpinn::pinn {
namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError("model: missing field '" + where + key + "'");
    }
    return *it;
}

double read_number(const json& obj, const std::string& key, const std::string& where) {
    const json& value = require(obj, key, where);
    if (!value.is_number()) {
        throw FormatError("model: field '" + where + key + "' must be a number");
    }
    return value.get<double>();
}

std::string read_string(const json& obj, const std::string& key) {
    const json& value = require(obj, key, "");
    if (!value.is_string()) {
        throw FormatError("model: field '" + key + "' must be a string");
    }
    return value.get<std::string>();
}

Matrix<double> read_weights(const json& value, const std::string& field) {
    if (!value.is_array() || value.empty() || !value.front().is_array()) {
        throw FormatError("model: field '" + field + "' must be a non-empty nested array");
    }
    const auto rows = static_cast<Eigen::Index>(value.size());
    const auto cols = static_cast<Eigen::Index>(value.front().size());
    Matrix<double> w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = value[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw FormatError("model: field '" + field + "' is ragged at row " + std::to_string(r));
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_number()) {
                throw FormatError("model: field '" + field + "' holds a non-number");
            }
            w(r, c) = entry.get<double>();
        }
    }
    return w;
}

Vector<double> read_bias(const json& value, const std::string& field) {
    if (!value.is_array()) {
        throw FormatError("model: field '" + field + "' must be an array");
    }
    Vector<double> b(static_cast<Eigen::Index>(value.size()));
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number()) {
            throw FormatError("model: field '" + field + "' holds a non-number");
        }
        b(static_cast<Eigen::Index>(i)) = value[i].get<double>();
    }
    return b;
}

}  // namespace

std::string dump_model(const MlpModel& model) {
    model.validate();
    json layers = json::array();
    for (std::size_t l = 0; l < model.network.layer_count(); ++l) {
        const auto& w = model.network.weights[l];
        json rows = json::array();
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < w.cols(); ++c) {
                row.push_back(w(r, c));
            }
            rows.push_back(std::move(row));
        }
        const auto& b = model.network.biases[l];
        layers.push_back({{"W", std::move(rows)}, {"b", std::vector<double>(b.data(), b.data() + b.size())}});
    }
    const json obj = {
        {"schema_version", kModelSchemaVersion},
        {"layer_sizes", model.layer_sizes},
        {"activation", "relu"},
        {"head", "pow10_neg"},
        {"ranges",
         {{"p_CO_max", model.ranges.p_co_max},
          {"p_H2_max", model.ranges.p_h2_max},
          {"p_H2O_max", model.ranges.p_h2o_max},
          {"T_min", model.ranges.t_min},
          {"T_max", model.ranges.t_max}}},
        {"precision", to_string(model.precision)},
        {"layers", std::move(layers)},
    };
    return obj.dump();
}

MlpModel parse_model(const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("model: malformed or truncated JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw FormatError("model: top level must be a JSON object");
    }
    const json& version = require(obj, "schema_version", "");
    if (!version.is_number_integer() || version.get<int>() != kModelSchemaVersion) {
        throw FormatError("model: field 'schema_version' must be " + std::to_string(kModelSchemaVersion));
    }
    if (read_string(obj, "activation") != "relu") {
        throw FormatError("model: field 'activation' must be \"relu\"");
    }
    if (read_string(obj, "head") != "pow10_neg") {
        throw FormatError("model: field 'head' must be \"pow10_neg\"");
    }

    MlpModel model;
    const json& sizes = require(obj, "layer_sizes", "");
    try {
        model.layer_sizes = sizes.get<std::vector<int>>();
    } catch (const json::exception&) {
        throw FormatError("model: field 'layer_sizes' must be an array of integers");
    }
    model.precision = parse_precision(read_string(obj, "precision"));

    const json& ranges = require(obj, "ranges", "");
    if (!ranges.is_object()) {
        throw FormatError("model: field 'ranges' must be an object");
    }
    model.ranges.p_co_max = read_number(ranges, "p_CO_max", "ranges.");
    model.ranges.p_h2_max = read_number(ranges, "p_H2_max", "ranges.");
    model.ranges.p_h2o_max = read_number(ranges, "p_H2O_max", "ranges.");
    model.ranges.t_min = read_number(ranges, "T_min", "ranges.");
    model.ranges.t_max = read_number(ranges, "T_max", "ranges.");

    const json& layers = require(obj, "layers", "");
    if (!layers.is_array()) {
        throw FormatError("model: field 'layers' must be an array");
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const std::string where = "layers[" + std::to_string(l) + "].";
        model.network.weights.push_back(read_weights(require(layers[l], "W", where), where + "W"));
        model.network.biases.push_back(read_bias(require(layers[l], "b", where), where + "b"));
    }
    try {
        model.validate();
    } catch (const DomainError& e) {
        throw FormatError(std::string("model: ") + e.what());
    }
    return model;
}

void save_model(const MlpModel& model, const std::filesystem::path& path) {
    const std::string text = dump_model(model);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot open " + tmp.string() + " for writing");
        }
        out << text << '\n';
        if (!out) {
            throw Error("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw Error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

MlpModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open model file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_model(buffer.str());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

}  // namespace ftpinn::pinn
