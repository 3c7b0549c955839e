#include "vilenkin/cli/config.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "vilenkin/error.hpp"
#include "vilenkin/families.hpp"
#include "vilenkin/io.hpp"

namespace vilenkin::cli {

namespace {

using nlohmann::json;

void require_keys(const json& j, std::string_view where,
                  const std::vector<std::string_view>& allowed) {
  if (!j.is_object()) throw ConfigError(fmt::format("{} must be an object", where));
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(fmt::format("unknown key '{}' in {}", item.key(), where));
    }
  }
}

template <typename T>
T get(const json& j, std::string_view key, std::string_view where) {
  try {
    return j.at(std::string(key)).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}.{}: {}", where, key, e.what()));
  }
}

template <typename T>
void read(const json& j, std::string_view key, std::string_view where, T& slot) {
  if (j.contains(std::string(key))) slot = get<T>(j, key, where);
}

std::vector<unsigned> unsigned_list(const json& j, std::string_view where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(fmt::format("{} must be a nonempty array", where));
  }
  std::vector<unsigned> out;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(fmt::format("{} entries must be nonnegative integers", where));
    }
    out.push_back(v.get<unsigned>());
  }
  return out;
}

RadixSequence checked_radix(std::vector<unsigned> radices) {
  try {
    return RadixSequence(std::move(radices));
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

Schedule parse_schedule(const json& j) {
  require_keys(j, "schedule",
               {"kind", "first_scale", "last_scale", "n", "first", "last", "extra"});
  Schedule s;
  const auto kind = j.value("kind", std::string("scales"));
  if (kind == "scales") {
    s.kind = Schedule::Kind::scales;
  } else if (kind == "list") {
    s.kind = Schedule::Kind::list;
    s.list = get<std::vector<Index>>(j, "n", "schedule");
  } else if (kind == "range") {
    s.kind = Schedule::Kind::range;
  } else {
    throw ConfigError(fmt::format("schedule.kind '{}' is not scales|list|range", kind));
  }
  read(j, "first_scale", "schedule", s.first_scale);
  read(j, "last_scale", "schedule", s.last_scale);
  read(j, "first", "schedule", s.first);
  read(j, "last", "schedule", s.last);
  read(j, "extra", "schedule", s.extra);
  return s;
}

TrendSpec parse_trend(const json& j) {
  require_keys(j, "trend",
               {"trailing_scales", "final_ratio", "reference_scale", "enforce"});
  TrendSpec t;
  read(j, "trailing_scales", "trend", t.trailing_scales);
  read(j, "final_ratio", "trend", t.final_ratio);
  read(j, "reference_scale", "trend", t.reference_scale);
  read(j, "enforce", "trend", t.enforce);
  if (t.trailing_scales < 2) throw ConfigError("trend.trailing_scales must be >= 2");
  if (!(t.final_ratio > 0.0)) throw ConfigError("trend.final_ratio must be positive");
  return t;
}

KernelScanSpec parse_kernel_scan(const json& j) {
  constexpr std::string_view where = "kernel_scan";
  require_keys(j, where,
               {"lemmas", "stability_factor", "lemma2_last", "lemma4_max_n",
                "lemma4_reference_n", "lemma4_draws", "lemma4_growth_factor",
                "lemma5_top_guard"});
  KernelScanSpec k;
  read(j, "lemmas", where, k.lemmas);
  read(j, "stability_factor", where, k.stability_factor);
  read(j, "lemma2_last", where, k.lemma2_last);
  read(j, "lemma4_max_n", where, k.lemma4_max_n);
  read(j, "lemma4_reference_n", where, k.lemma4_reference_n);
  read(j, "lemma4_draws", where, k.lemma4_draws);
  read(j, "lemma4_growth_factor", where, k.lemma4_growth_factor);
  read(j, "lemma5_top_guard", where, k.lemma5_top_guard);
  static const std::set<std::string> known{"lemma2", "lemma3", "lemma4", "lemma5"};
  for (const auto& name : k.lemmas) {
    if (!known.contains(name)) {
      throw ConfigError(fmt::format("kernel_scan.lemmas: unknown scan '{}'", name));
    }
  }
  if (k.lemma4_draws == 0) throw ConfigError("kernel_scan.lemma4_draws must be positive");
  if (k.lemma4_reference_n == 0 || k.lemma4_reference_n > k.lemma4_max_n) {
    throw ConfigError("kernel_scan.lemma4_reference_n must lie in [1, lemma4_max_n]");
  }
  return k;
}

BenchSpec parse_bench(const json& j) {
  require_keys(j, "bench", {"repeats", "min_speedup"});
  BenchSpec b;
  read(j, "repeats", "bench", b.repeats);
  read(j, "min_speedup", "bench", b.min_speedup);
  if (b.repeats == 0) throw ConfigError("bench.repeats must be positive");
  return b;
}

FunctionSpec parse_function(const json& j) {
  if (!j.is_object() || !j.contains("family")) {
    throw ConfigError("function must be an object with a 'family' key");
  }
  FunctionSpec spec;
  spec.family = get<std::string>(j, "family", "function");
  spec.params = j;
  spec.params.erase("family");
  static const std::map<std::string, std::vector<std::string_view>> keys{
      {"constant", {"value"}},
      {"lacunary", {"s", "coeffs"}},
      {"digit_indicator", {"j", "beta"}},
      {"random_lipschitz", {"bound"}},
      {"character", {"n"}},
      {"random", {"complex"}},
      {"file", {"path"}},
  };
  const auto it = keys.find(spec.family);
  if (it == keys.end()) {
    throw ConfigError(fmt::format("function.family '{}' is unknown", spec.family));
  }
  require_keys(spec.params, "function", it->second);
  if (spec.family == "file" && !spec.params.contains("path")) {
    throw ConfigError("function.family 'file' needs a 'path'");
  }
  if (spec.family == "character" && !spec.params.contains("n")) {
    throw ConfigError("function.family 'character' needs 'n'");
  }
  return spec;
}

}  // namespace

RadixSequence parse_radix(const json& j) {
  if (j.is_array()) return checked_radix(unsigned_list(j, "radix"));
  if (!j.is_object()) throw ConfigError("radix must be a list or an object");
  if (j.contains("constant")) {
    require_keys(j, "radix", {"constant", "length"});
    const auto m = get<unsigned>(j, "constant", "radix");
    const auto length = get<std::size_t>(j, "length", "radix");
    if (length == 0) throw ConfigError("radix.length must be positive");
    return checked_radix(std::vector<unsigned>(length, m));
  }
  if (j.contains("pattern")) {
    require_keys(j, "radix", {"pattern", "length", "repeat"});
    const auto pattern = unsigned_list(j.at("pattern"), "radix.pattern");
    if (j.contains("length") == j.contains("repeat")) {
      throw ConfigError("radix pattern needs exactly one of 'length' or 'repeat'");
    }
    const std::size_t length = j.contains("length")
                                   ? get<std::size_t>(j, "length", "radix")
                                   : pattern.size() * get<std::size_t>(j, "repeat", "radix");
    if (length == 0) throw ConfigError("radix length must be positive");
    std::vector<unsigned> radices(length);
    for (std::size_t i = 0; i < length; ++i) radices[i] = pattern[i % pattern.size()];
    return checked_radix(std::move(radices));
  }
  throw ConfigError("radix object needs 'constant' or 'pattern'");
}

YoungFunction parse_young(const json& j) {
  const auto kind = j.is_object() ? j.value("kind", std::string()) : std::string();
  try {
    if (kind == "power") {
      require_keys(j, "young", {"kind", "p"});
      return YoungFunction::power(get<double>(j, "p", "young"));
    }
    if (kind == "table") {
      require_keys(j, "young", {"kind", "u", "M"});
      return YoungFunction::table(get<std::vector<double>>(j, "u", "young"),
                                  get<std::vector<double>>(j, "M", "young"));
    }
  } catch (const DomainError& e) {
    throw ConfigError(fmt::format("young: {}", e.what()));
  }
  throw ConfigError("young.kind must be 'power' or 'table'");
}

ExperimentConfig parse_config(const json& j) {
  require_keys(j, "config",
               {"radix", "resolution", "radices", "alphas", "function", "schedule",
                "out", "seed", "suites", "max_cells", "trend", "young",
                "kernel_scan", "bench", "kernel_weight_offset", "threads"});
  ExperimentConfig cfg;
  if (j.contains("radix")) cfg.radix = parse_radix(j.at("radix"));
  if (j.contains("resolution")) {
    const auto n = get<std::size_t>(j, "resolution", "config");
    if (n != cfg.radix.size()) {
      throw ConfigError(fmt::format("resolution {} does not match radix length {}", n,
                                    cfg.radix.size()));
    }
  }
  if (j.contains("radices")) {
    if (!j.at("radices").is_array()) throw ConfigError("radices must be an array");
    for (const auto& r : j.at("radices")) cfg.radices.push_back(parse_radix(r));
  }
  read(j, "alphas", "config", cfg.alphas);
  if (cfg.alphas.empty()) throw ConfigError("alphas must not be empty");
  for (double a : cfg.alphas) {
    if (!(a > 0.0 && a < 1.0)) {
      throw ConfigError(fmt::format("alpha {} outside (0, 1)", a));
    }
  }
  if (j.contains("function")) cfg.function = parse_function(j.at("function"));
  if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule"));
  if (j.contains("out")) cfg.out = get<std::string>(j, "out", "config");
  read(j, "seed", "config", cfg.seed);
  read(j, "suites", "config", cfg.suites);
  read(j, "max_cells", "config", cfg.max_cells);
  if (j.contains("trend")) cfg.trend = parse_trend(j.at("trend"));
  if (j.contains("young")) {
    parse_young(j.at("young"));
    cfg.young = j.at("young");
  }
  if (j.contains("kernel_scan")) cfg.kernel_scan = parse_kernel_scan(j.at("kernel_scan"));
  if (j.contains("bench")) cfg.bench = parse_bench(j.at("bench"));
  read(j, "kernel_weight_offset", "config", cfg.kernel_weight_offset);
  read(j, "threads", "config", cfg.threads);

  for (const auto& name : cfg.suites) {
    const auto& known = verify_suites();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError(fmt::format("unknown suite '{}'", name));
    }
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  ExperimentConfig cfg = parse_config(read_json_file(path));
  cfg.base_dir = path.parent_path().empty() ? "." : path.parent_path();
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  auto radix_json = [](const RadixSequence& r) {
    return std::vector<unsigned>(r.radices().begin(), r.radices().end());
  };
  json j;
  j["radix"] = radix_json(cfg.radix);
  j["resolution"] = cfg.radix.size();
  j["radices"] = json::array();
  for (const auto& r : cfg.scan_radices()) j["radices"].push_back(radix_json(r));
  j["alphas"] = cfg.alphas;
  j["function"] = cfg.function.params;
  j["function"]["family"] = cfg.function.family;
  j["seed"] = cfg.seed;
  j["suites"] = cfg.suites.empty() ? verify_suites() : cfg.suites;
  j["max_cells"] = cfg.max_cells;
  j["trend"] = {{"trailing_scales", cfg.trend.trailing_scales},
                {"final_ratio", cfg.trend.final_ratio},
                {"reference_scale", cfg.trend.reference_scale},
                {"enforce", cfg.trend.enforce}};
  j["young"] = cfg.young;
  const auto& k = cfg.kernel_scan;
  j["kernel_scan"] = {{"lemmas", k.lemmas},
                      {"stability_factor", k.stability_factor},
                      {"lemma2_last", k.lemma2_last},
                      {"lemma4_max_n", k.lemma4_max_n},
                      {"lemma4_reference_n", k.lemma4_reference_n},
                      {"lemma4_draws", k.lemma4_draws},
                      {"lemma4_growth_factor", k.lemma4_growth_factor},
                      {"lemma5_top_guard", k.lemma5_top_guard}};
  j["kernel_weight_offset"] = cfg.kernel_weight_offset;
  return j;
}

std::vector<RadixSequence> ExperimentConfig::scan_radices() const {
  return radices.empty() ? std::vector<RadixSequence>{radix} : radices;
}

bool ExperimentConfig::suite_selected(const std::string& name) const {
  return suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end();
}

NumberSystem make_number_system(const RadixSequence& radix, Index max_cells) {
  NumberSystem ns = build_number_system(radix);
  if (ns.size() > max_cells) {
    throw ConfigError(fmt::format("M_N = {} for radix {} exceeds max_cells = {}",
                                  ns.size(), radix.label(), max_cells));
  }
  return ns;
}

StepFunction make_function(const FunctionSpec& spec, const NumberSystem& ns,
                           std::uint64_t seed,
                           const std::filesystem::path& base_dir) {
  const json& p = spec.params;
  try {
    if (spec.family == "constant") {
      return StepFunction::constant(ns, p.value("value", 1.0));
    }
    if (spec.family == "lacunary") {
      if (p.contains("coeffs")) {
        auto c = get<std::vector<double>>(p, "coeffs", "function");
        if (c.size() > ns.resolution()) {
          throw ConfigError("function.coeffs is longer than the resolution");
        }
        c.resize(ns.resolution(), 0.0);
        return lacunary(ns, c);
      }
      return lacunary(ns, inverse_scale_coefficients(ns, p.value("s", 1.0)));
    }
    if (spec.family == "digit_indicator") {
      return digit_indicator(ns, p.value("j", std::size_t{1}), p.value("beta", Index{0}));
    }
    if (spec.family == "random_lipschitz") {
      return random_lipschitz(ns, seed, p.value("bound", 1.0));
    }
    if (spec.family == "character") {
      return character_function(ns, get<Index>(p, "n", "function"));
    }
    if (spec.family == "random") {
      return random_cells(ns, seed, p.value("complex", false));
    }
    if (spec.family == "file") {
      std::filesystem::path path = get<std::string>(p, "path", "function");
      if (path.is_relative()) path = base_dir / path;
      StepFunction f = load_step_function(path);
      if (!(f.ns() == ns)) {
        throw ConfigError(fmt::format("{} is defined on radix {}, expected {}",
                                      path.string(), f.ns().radix().label(),
                                      ns.radix().label()));
      }
      return f;
    }
  } catch (const ValidationError& e) {
    throw ConfigError(fmt::format("function: {}", e.what()));
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("function: {}", e.what()));
  }
  throw ConfigError(fmt::format("function.family '{}' is unknown", spec.family));
}

std::string describe(const FunctionSpec& spec) {
  std::vector<std::string> parts;
  for (const auto& item : spec.params.items()) {
    parts.push_back(fmt::format("{}={}", item.key(), item.value().dump()));
  }
  return fmt::format("{}", fmt::join(parts, ";"));
}

std::vector<Index> schedule_points(const Schedule& s, const NumberSystem& ns) {
  std::vector<Index> out;
  const std::size_t N = ns.resolution();
  switch (s.kind) {
    case Schedule::Kind::scales: {
      const std::size_t last = s.last_scale == 0 ? (N == 0 ? 0 : N - 1) : s.last_scale;
      if (s.first_scale > last || last > N) {
        throw ConfigError(fmt::format("scale range [{}, {}] invalid for N = {}",
                                      s.first_scale, last, N));
      }
      for (std::size_t k = s.first_scale; k <= last; ++k) out.push_back(ns.block(k));
      break;
    }
    case Schedule::Kind::list:
      out = s.list;
      break;
    case Schedule::Kind::range: {
      const Index last = s.last == 0 ? ns.size() : s.last;
      if (s.first == 0 || s.first > last) {
        throw ConfigError(fmt::format("schedule range [{}, {}] is empty", s.first, last));
      }
      for (Index n = s.first; n <= last; ++n) out.push_back(n);
      break;
    }
  }
  out.insert(out.end(), s.extra.begin(), s.extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (Index n : out) {
    if (n == 0 || n > ns.size()) {
      throw ConfigError(fmt::format("scheduled n = {} outside [1, M_N = {}]", n, ns.size()));
    }
  }
  return out;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{
      "group", "characters", "binomials", "dirichlet", "lemma1", "routes", "transform"};
  return names;
}

}  // namespace vilenkin::cli
