#include "vilenkin/io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin {

namespace {

nlohmann::json header(const NumberSystem& ns) {
  nlohmann::json j;
  const auto radices = ns.radix().radices();
  j["radix"] = std::vector<unsigned>(radices.begin(), radices.end());
  j["resolution"] = ns.resolution();
  return j;
}

nlohmann::json encode(std::span<const Complex> values) {
  nlohmann::json out = nlohmann::json::array();
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("non-finite value cannot be serialized");
    }
    out.push_back({v.real(), v.imag()});
  }
  return out;
}

NumberSystem decode_header(const nlohmann::json& j) {
  try {
    auto radices = j.at("radix").get<std::vector<unsigned>>();
    const auto resolution = j.at("resolution").get<std::size_t>();
    if (resolution != radices.size()) {
      throw ValidationError(fmt::format("resolution {} does not match {} radices",
                                        resolution, radices.size()));
    }
    return build_number_system(RadixSequence(std::move(radices)));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed container header: {}", e.what()));
  }
}

std::vector<Complex> decode_values(const nlohmann::json& j, const char* key,
                                   Index expected) {
  try {
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.size() != expected) {
      throw ValidationError(fmt::format("'{}' must hold {} entries", key, expected));
    }
    std::vector<Complex> out;
    out.reserve(expected);
    for (const auto& pair : arr) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ValidationError(fmt::format("'{}' entries must be [re, im]", key));
      }
      out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed '{}': {}", key, e.what()));
  }
}

}  // namespace

nlohmann::json to_json(const StepFunction& f) {
  nlohmann::json j = header(f.ns());
  j["cells"] = encode(f.cells());
  return j;
}

nlohmann::json to_json(const CoefficientVector& c) {
  nlohmann::json j = header(c.ns());
  j["coeffs"] = encode(c.coeffs());
  return j;
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  NumberSystem ns = decode_header(j);
  auto cells = decode_values(j, "cells", ns.size());
  return StepFunction(std::move(ns), std::move(cells));
}

CoefficientVector coefficients_from_json(const nlohmann::json& j) {
  NumberSystem ns = decode_header(j);
  auto coeffs = decode_values(j, "coeffs", ns.size());
  return CoefficientVector(std::move(ns), std::move(coeffs));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open {}", path.string()));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_json_file(const nlohmann::json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(fmt::format("cannot write {}", path.string()));
  out << j.dump(2) << '\n';
}

void save(const StepFunction& f, const std::filesystem::path& path) {
  write_json_file(to_json(f), path);
}

void save(const CoefficientVector& c, const std::filesystem::path& path) {
  write_json_file(to_json(c), path);
}

StepFunction load_step_function(const std::filesystem::path& path) {
  return step_function_from_json(read_json_file(path));
}

CoefficientVector load_coefficients(const std::filesystem::path& path) {
  return coefficients_from_json(read_json_file(path));
}

}  // namespace vilenkin
