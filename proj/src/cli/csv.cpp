#include "vilenkin/cli/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "vilenkin/error.hpp"

namespace vilenkin::cli {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string render(const Cell& cell) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return quote(s); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::optional<double>& v) const {
      return v ? format_number(*v) : std::string();
    }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[512];
  const auto fmt = std::abs(v) < 1e-4 ? std::chars_format::scientific
                                      : std::chars_format::fixed;
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, fmt);
  if (ec != std::errc()) return fmt::format("{}", v);
  return std::string(buf, end);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : out_(path), width_(columns.size() + 1) {
  if (!out_) throw ConfigError(fmt::format("cannot write {}", path.string()));
  out_ << "schema_version";
  for (const auto& c : columns) out_ << ',' << quote(c);
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() + 1 != width_) {
    throw ValidationError(fmt::format("CSV row has {} fields, header has {}",
                                      cells.size() + 1, width_));
  }
  out_ << kSchemaVersion;
  for (const auto& c : cells) out_ << ',' << render(c);
  out_ << '\n';
}

}  // namespace vilenkin::cli
