#include "ppvi/json_io.hpp"

#include <cstdio>

namespace ppvi {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

nlohmann::json complex_to_json(std::complex<double> z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::json artifact_header(nlohmann::json parameters) {
    nlohmann::json j;
    j["schema"] = kSchema;
    j["tool_version"] = kToolVersion;
    j["parameters"] = std::move(parameters);
    return j;
}

std::string dump_artifact(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace ppvi
