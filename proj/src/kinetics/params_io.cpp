#include "ftpinn/params_io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "ftpinn/errors.hpp"

namespace ftpinn::kinetics {
namespace {

using nlohmann::json;

struct LawField {
    const char* prefactor_key;
    const char* energy_key;
    Arrhenius KineticParameters::*member;
};

constexpr std::array<LawField, 10> kLawFields{{
    {"A_K1", "dH_K1", &KineticParameters::K1},
    {"A_K2", "dH_K2", &KineticParameters::K2},
    {"A_K4", "dH_K4", &KineticParameters::K4},
    {"A_K5", "dH_K5", &KineticParameters::K5},
    {"A_K6", "dH_K6", &KineticParameters::K6},
    {"A_k3", "E_k3", &KineticParameters::k3},
    {"A_k7", "E_k7", &KineticParameters::k7},
    {"A_k7M", "E_k7M", &KineticParameters::k7M},
    {"A_k8E", "E_k8E", &KineticParameters::k8E},
    {"A_k80", "E_k80", &KineticParameters::k80},
}};

double require_number(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw FormatError(std::string("parameters: missing field '") + key + "'");
    }
    if (!it->is_number()) {
        throw FormatError(std::string("parameters: field '") + key + "' must be a number");
    }
    return it->get<double>();
}

bool is_known_key(const std::string& key) {
    if (key == "dE" || key == "N_max") {
        return true;
    }
    for (const auto& field : kLawFields) {
        if (key == field.prefactor_key || key == field.energy_key) {
            return true;
        }
    }
    return false;
}

}  // namespace

KineticParameters parse_parameters(const std::string& json_text) {
    json obj;
    try {
        obj = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("parameters: malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw FormatError("parameters: top level must be a JSON object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (!is_known_key(key)) {
            throw FormatError("parameters: unknown field '" + key + "'");
        }
    }

    KineticParameters params;
    for (const auto& field : kLawFields) {
        params.*field.member = Arrhenius{require_number(obj, field.prefactor_key),
                                         require_number(obj, field.energy_key)};
    }
    params.olefin_energy_increment = require_number(obj, "dE");
    if (const auto it = obj.find("N_max"); it != obj.end()) {
        if (!it->is_number_integer()) {
            throw FormatError("parameters: field 'N_max' must be an integer");
        }
        params.max_carbon_number = it->get<int>();
    }
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw FormatError(std::string("parameters: ") + e.what());
    }
    return params;
}

KineticParameters load_parameters(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open parameter file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_parameters(buffer.str());
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string dump_parameters(const KineticParameters& params) {
    json obj = json::object();
    for (const auto& field : kLawFields) {
        const Arrhenius& law = params.*field.member;
        obj[field.prefactor_key] = law.prefactor;
        obj[field.energy_key] = law.energy;
    }
    obj["dE"] = params.olefin_energy_increment;
    obj["N_max"] = params.max_carbon_number;
    return obj.dump(2);
}

}  // namespace ftpinn::kinetics
