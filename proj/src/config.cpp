#include "lpb/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace lpb {

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::invalid_argument(path + ": " + message), path_(std::move(path)) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf") return std::numeric_limits<double>::infinity();
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "not a number: '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "not an integer: '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key, "out of range: '" + v + "'");
  return static_cast<int>(x);
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key, "not an unsigned integer: '" + v + "'");
  return x;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt(Lebesgue p) { return p.is_infinite() ? "inf" : fmt(p.value()); }

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", [](auto& c, auto& k, auto& v) { c.grid.n = to_int(k, v); }},
      {"grid.N", [](auto& c, auto& k, auto& v) { c.grid.N = to_int(k, v); }},
      {"grid.L", [](auto& c, auto& k, auto& v) { c.grid.L = to_double(k, v); }},
      {"cutoff.smoothing", [](auto& c, auto& k, auto& v) { c.smoothing = to_double(k, v); }},
      {"corpus.seed", [](auto& c, auto& k, auto& v) { c.corpus.seed = to_u64(k, v); }},
      {"corpus.count", [](auto& c, auto& k, auto& v) { c.corpus.count = to_int(k, v); }},
      {"corpus.slope", [](auto& c, auto& k, auto& v) { c.corpus.slope = to_double(k, v); }},
      {"solver.dt", [](auto& c, auto& k, auto& v) { c.solver.dt = to_double(k, v); }},
      {"solver.t_end", [](auto& c, auto& k, auto& v) { c.solver.t_end = to_double(k, v); }},
      {"solver.init", [](auto& c, auto&, auto& v) { c.solver.init = v; }},
      {"solver.snapshot_every", [](auto& c, auto& k, auto& v) { c.solver.snapshot_every = to_int(k, v); }},
      {"solver.amplitude", [](auto& c, auto& k, auto& v) { c.solver.amplitude = to_double(k, v); }},
      {"diagnostics.eps",
       [](auto& c, auto& k, auto& v) {
         c.diagnostics.eps.clear();
         for (const auto& item : split(v, ',')) c.diagnostics.eps.push_back(to_double(k, item));
       }},
      {"diagnostics.pq",
       [](auto& c, auto& k, auto& v) {
         try {
           c.diagnostics.pq = parse_pq_list(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(k, e.what());
         }
       }},
      {"diagnostics.r", [](auto& c, auto& k, auto& v) { c.diagnostics.r = to_double(k, v); }},
      {"diagnostics.T", [](auto& c, auto& k, auto& v) { c.diagnostics.T = to_double(k, v); }},
      {"diagnostics.series", [](auto& c, auto&, auto& v) { c.diagnostics.series = v; }},
      {"diagnostics.width", [](auto& c, auto& k, auto& v) { c.diagnostics.width = to_double(k, v); }},
      {"diagnostics.lambda_min", [](auto& c, auto& k, auto& v) { c.diagnostics.lambda_min = to_double(k, v); }},
      {"diagnostics.samples", [](auto& c, auto& k, auto& v) { c.diagnostics.samples = to_int(k, v); }},
      {"output.dir", [](auto& c, auto&, auto& v) { c.output_dir = v; }},
  };
  return table;
}

void require(bool ok, const char* path, const std::string& message) {
  if (!ok) throw ConfigError(path, message);
}

}  // namespace

Lebesgue parse_lebesgue(const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return Lebesgue::infinity();
  return Lebesgue(to_double("exponent", t));
}

std::vector<std::pair<Lebesgue, Lebesgue>> parse_pq_list(const std::string& text) {
  std::vector<std::pair<Lebesgue, Lebesgue>> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw std::invalid_argument("expected p:q pairs, got '" + item + "'");
    out.emplace_back(parse_lebesgue(parts[0]), parse_lebesgue(parts[1]));
  }
  if (out.empty()) throw std::invalid_argument("empty p:q list");
  return out;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(key, "unknown key");
  it->second(config, key, value);
}

void ExperimentConfig::validate() const {
  require(grid.n == 2 || grid.n == 3, "grid.n", "must be 2 or 3");
  require(is_power_of_two(grid.N) && grid.N >= 8, "grid.N", "must be a power of two >= 8");
  require(grid.L > 0.0 && std::isfinite(grid.L), "grid.L", "must be positive and finite");
  require(smoothing > 0.0 && std::isfinite(smoothing), "cutoff.smoothing", "must be positive");
  require(corpus.count >= 1, "corpus.count", "must be at least 1");
  require(std::isfinite(corpus.slope) && corpus.slope >= 0.0, "corpus.slope", "must be nonnegative");
  require(solver.dt > 0.0 && std::isfinite(solver.dt), "solver.dt", "must be positive");
  require(solver.t_end >= solver.dt && std::isfinite(solver.t_end), "solver.t_end", "must be at least solver.dt");
  require(solver.snapshot_every >= 1, "solver.snapshot_every", "must be at least 1");
  require(solver.amplitude > 0.0 && std::isfinite(solver.amplitude), "solver.amplitude", "must be positive");
  const bool known_init = solver.init == "taylor-green" || solver.init == "random-seeded" ||
                          (solver.init.rfind("bsnap:", 0) == 0 && solver.init.size() > 6);
  require(known_init, "solver.init", "must be taylor-green, random-seeded or bsnap:<path>");

  const auto& d = diagnostics;
  require(!d.eps.empty(), "diagnostics.eps", "must list at least one value");
  for (double e : d.eps) require(e >= 1.0 && e <= 2.0, "diagnostics.eps", "values must lie in [1, 2]");
  require(!d.pq.empty(), "diagnostics.pq", "must list at least one p:q pair");
  require(d.r >= 2.0 && std::isfinite(d.r), "diagnostics.r", "must be at least 2");
  for (double e : d.eps)
    if (e < 2.0)
      require(d.r < grid.n / (2.0 - e), "diagnostics.r", "must be below n / (2 - eps) for every eps < 2");
  require(d.T > 0.0 && std::isfinite(d.T), "diagnostics.T", "must be positive");
  require(!d.series.empty(), "diagnostics.series", "must not be empty");
  require(d.width > 0.0 && std::isfinite(d.width), "diagnostics.width", "must be positive");
  require(d.lambda_min > 0.0 && d.lambda_min < 1.0, "diagnostics.lambda_min", "must lie in (0, 1)");
  require(d.samples >= 5, "diagnostics.samples", "must be at least 5");
  require(!output_dir.empty(), "output.dir", "must not be empty");
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig config;
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number), "expected key=value");
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config " + path);
  return parse_config(is);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "grid.n=" << c.grid.n << '\n';
  os << "grid.N=" << c.grid.N << '\n';
  os << "grid.L=" << fmt(c.grid.L) << '\n';
  os << "cutoff.smoothing=" << fmt(c.smoothing) << '\n';
  os << "corpus.seed=" << c.corpus.seed << '\n';
  os << "corpus.count=" << c.corpus.count << '\n';
  os << "corpus.slope=" << fmt(c.corpus.slope) << '\n';
  os << "solver.dt=" << fmt(c.solver.dt) << '\n';
  os << "solver.t_end=" << fmt(c.solver.t_end) << '\n';
  os << "solver.init=" << c.solver.init << '\n';
  os << "solver.snapshot_every=" << c.solver.snapshot_every << '\n';
  os << "solver.amplitude=" << fmt(c.solver.amplitude) << '\n';
  os << "diagnostics.eps=";
  for (std::size_t i = 0; i < c.diagnostics.eps.size(); ++i) os << (i ? "," : "") << fmt(c.diagnostics.eps[i]);
  os << '\n' << "diagnostics.pq=";
  for (std::size_t i = 0; i < c.diagnostics.pq.size(); ++i)
    os << (i ? "," : "") << fmt(c.diagnostics.pq[i].first) << ':' << fmt(c.diagnostics.pq[i].second);
  os << '\n';
  os << "diagnostics.r=" << fmt(c.diagnostics.r) << '\n';
  os << "diagnostics.T=" << fmt(c.diagnostics.T) << '\n';
  os << "diagnostics.series=" << c.diagnostics.series << '\n';
  os << "diagnostics.width=" << fmt(c.diagnostics.width) << '\n';
  os << "diagnostics.lambda_min=" << fmt(c.diagnostics.lambda_min) << '\n';
  os << "diagnostics.samples=" << c.diagnostics.samples << '\n';
  os << "output.dir=" << c.output_dir << '\n';
  return os.str();
}

}  // namespace lpb
