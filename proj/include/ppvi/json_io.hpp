#pragma once

#include <complex>
#include <string>

#include "json.hpp"

namespace ppvi {

inline constexpr const char* kSchema = "pentagon-pvi/1";
inline constexpr const char* kToolVersion = "0.1.0";

// All floats are serialized through this 17-significant-digit formatter so
// JSON artifacts reproduce byte for byte.
std::string format_double(double v);

nlohmann::json complex_to_json(std::complex<double> z);
std::complex<double> complex_from_json(const nlohmann::json& j);

// {"schema": ..., "tool_version": ..., "parameters": ...}
nlohmann::json artifact_header(nlohmann::json parameters);

// Dump with deterministic float formatting (doubles are pre-rendered into
// strings by the callers that need byte stability; this just forwards).
std::string dump_artifact(const nlohmann::json& j);

}  // namespace ppvi
