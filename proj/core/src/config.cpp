#include "sgdg/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sgdg/errors.hpp"
#include "sgdg/projections.hpp"

namespace sgdg {
namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string &key, const std::string &text) {
  errno = 0;
  char *end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string &key, const std::string &text) {
  errno = 0;
  char *end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string &key, const std::string &text) {
  const long long v = to_integer(key, text);
  if (v < -1000000000LL || v > 1000000000LL) {
    throw ConfigError(key + ": out of range");
  }
  return static_cast<int>(v);
}

bool is_auto(const std::string &text) {
  return text == "auto" || text == "default";
}

// Shortest of %.15g / %.17g that reads back to the same double.
std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> sequence(double first, double step, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(first + step * i);
  return out;
}

}  // namespace

const std::vector<std::string> &config_keys() {
  static const std::vector<std::string> keys{
      "case",  "p",           "n",              "n_elements",
      "dt",    "t_final",     "C_pen",          "tau",
      "force_gamma", "snapshot_times", "output_dir", "seed"};
  return keys;
}

RunConfig default_config(CaseKind kind) {
  RunConfig c;
  c.kind = kind;
  switch (kind) {
    case CaseKind::kConvectionGaussian:
    case CaseKind::kConvectionHeaviside:
      c.n_elements = 16;
      c.t_final = 1.0;
      break;
    case CaseKind::kConvectionRecovery:
      c.n_elements = 16;
      c.t_final = 1.0;
      c.c_pen = 0.0;
      c.force_gamma = ForcedPenalty{12, 1e7};
      c.snapshot_times = {0.15, 0.28, 0.5};
      break;
    case CaseKind::kBurgers:
      c.dt = 1e-3;
      c.t_final = 0.88;
      c.snapshot_times = sequence(0.11, 0.11, 7);
      break;
    case CaseKind::kNozzle:
      c.dt = 2e-4;
      c.t_final = 0.4;
      c.snapshot_times = sequence(0.05, 0.05, 7);
      break;
    case CaseKind::kShuOsher:
    case CaseKind::kMach3Shock:
      c.p = 3;
      c.n = 5;
      c.n_elements = 64;
      c.t_final = make_case(kind).t_final;
      break;
    case CaseKind::kFvComparison:
      c.p = 0;
      c.n = 1;
      c.n_elements = 64 * 5;
      c.c_pen = 0.0;
      c.t_final = kShuOsherFinalTime;
      break;
  }
  return c;
}

KeyValues read_key_values(std::istream &in) {
  KeyValues out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) +
                        ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto &keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("line " + std::to_string(number) + ": unknown key '" +
                        key + "'");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(number) + ": repeated key '" +
                        key + "'");
    }
  }
  return out;
}

KeyValues read_key_values_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return read_key_values(in);
}

RunConfig make_config(const KeyValues &values) {
  const auto &keys = config_keys();
  for (const auto &[key, value] : values) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  const auto kind_it = values.find("case");
  if (kind_it == values.end()) throw ConfigError("missing key 'case'");
  const CaseKind kind = parse_case(kind_it->second);
  if (std::find(run_cases().begin(), run_cases().end(), kind) ==
      run_cases().end()) {
    throw ConfigError("case '" + kind_it->second + "' is reference-only");
  }
  RunConfig c = default_config(kind);

  for (const auto &[key, value] : values) {
    if (key == "case") continue;
    if (key == "p") {
      c.p = to_int(key, value);
    } else if (key == "n") {
      c.n = to_int(key, value);
    } else if (key == "n_elements") {
      c.n_elements = to_int(key, value);
    } else if (key == "dt") {
      c.dt = is_auto(value) ? std::nullopt
                            : std::optional<double>(to_double(key, value));
    } else if (key == "t_final") {
      c.t_final = to_double(key, value);
    } else if (key == "C_pen") {
      c.c_pen = to_double(key, value);
    } else if (key == "tau") {
      c.tau = is_auto(value) ? std::nullopt
                             : std::optional<double>(to_double(key, value));
    } else if (key == "force_gamma") {
      if (value == "none" || value.empty()) {
        c.force_gamma.reset();
      } else {
        const auto colon = value.find(':');
        if (colon == std::string::npos) {
          throw ConfigError("force_gamma: expected <element>:<gamma> or none");
        }
        const long long e = to_integer(key, trim(value.substr(0, colon)));
        if (e < 0) throw ConfigError("force_gamma: negative element index");
        c.force_gamma = ForcedPenalty{static_cast<std::size_t>(e),
                                      to_double(key, trim(value.substr(colon + 1)))};
      }
    } else if (key == "snapshot_times") {
      c.snapshot_times.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) c.snapshot_times.push_back(to_double(key, item));
      }
    } else if (key == "output_dir") {
      if (value.empty()) throw ConfigError("output_dir must not be empty");
      c.output_dir = value;
    } else if (key == "seed") {
      const long long s = to_integer(key, value);
      if (s < 0) throw ConfigError("seed must be non-negative");
      c.seed = static_cast<std::uint64_t>(s);
    }
  }
  validate(c);
  return c;
}

void validate(const RunConfig &c) {
  if (c.p < 0) throw ConfigError("p must be >= 0");
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.n_elements < 1) throw ConfigError("n_elements must be >= 1");
  if (c.dt && !(*c.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(c.t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
  if (!(c.c_pen >= 0.0)) throw ConfigError("C_pen must be >= 0");
  if (c.tau && !(*c.tau >= 0.0)) throw ConfigError("tau must be >= 0");
  for (double t : c.snapshot_times) {
    if (!(t >= 0.0) || t > c.t_final) {
      throw ConfigError("snapshot times must lie in [0, t_final]");
    }
  }
  if (c.force_gamma) {
    if (c.force_gamma->element >= static_cast<std::size_t>(c.n_elements)) {
      throw ConfigError("force_gamma: element index out of range");
    }
    if (!(c.force_gamma->gamma >= 0.0)) {
      throw ConfigError("force_gamma: gamma must be >= 0");
    }
  }
  if (c.kind == CaseKind::kFvComparison && c.p != 0) {
    throw ConfigError("fv-comparison runs with p = 0");
  }
  if (c.c_pen > 0.0 && c.p > 0) {
    // Throws NonInjectiveError when n sub-cell averages cannot determine a
    // degree-p polynomial.
    AveragePreservingProjector check(ElementSpace(c.p, c.n));
  }
}

KeyValues to_key_values(const RunConfig &c) {
  KeyValues kv;
  kv["case"] = std::string(case_name(c.kind));
  kv["p"] = std::to_string(c.p);
  kv["n"] = std::to_string(c.n);
  kv["n_elements"] = std::to_string(c.n_elements);
  kv["dt"] = c.dt ? format(*c.dt) : "auto";
  kv["t_final"] = format(c.t_final);
  kv["C_pen"] = format(c.c_pen);
  kv["tau"] = c.tau ? format(*c.tau) : "auto";
  kv["force_gamma"] = c.force_gamma ? std::to_string(c.force_gamma->element) +
                                          ":" + format(c.force_gamma->gamma)
                                    : "none";
  std::string times;
  for (double t : c.snapshot_times) {
    if (!times.empty()) times += ",";
    times += format(t);
  }
  kv["snapshot_times"] = times;
  kv["output_dir"] = c.output_dir;
  kv["seed"] = std::to_string(c.seed);
  return kv;
}

}  // namespace sgdg
