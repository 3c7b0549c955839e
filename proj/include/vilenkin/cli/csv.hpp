#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vilenkin::cli {

inline constexpr int kSchemaVersion = 1;

/// Shortest round-trip text for a double: "0" for zero, scientific
/// notation when |v| < 1e-4, fixed notation otherwise.
std::string format_number(double v);

/// One CSV field. An empty optional renders as an empty field.
using Cell = std::variant<std::string, double, std::uint64_t, std::int64_t, bool,
                          std::optional<double>>;

/// Comma-separated, '\n'-terminated rows with a header. The first column
/// is always schema_version.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::vector<std::string> columns);

  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace vilenkin::cli
