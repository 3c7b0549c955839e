#pragma once

#include <filesystem>

#include <json.hpp>

#include "vilenkin/step_function.hpp"

namespace vilenkin {

// JSON container {"radix": [...], "resolution": N, "cells"|"coeffs":
// [[re, im], ...]}. Doubles are written in shortest round-trip form, so a
// write/read cycle reproduces every value bit for bit.

nlohmann::json to_json(const StepFunction& f);
nlohmann::json to_json(const CoefficientVector& c);

StepFunction step_function_from_json(const nlohmann::json& j);
CoefficientVector coefficients_from_json(const nlohmann::json& j);

void save(const StepFunction& f, const std::filesystem::path& path);
void save(const CoefficientVector& c, const std::filesystem::path& path);
StepFunction load_step_function(const std::filesystem::path& path);
CoefficientVector load_coefficients(const std::filesystem::path& path);

/// Reads and parses a JSON document; throws ConfigError on I/O or syntax
/// failure.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes `j` with two-space indentation and a trailing newline.
void write_json_file(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace vilenkin
