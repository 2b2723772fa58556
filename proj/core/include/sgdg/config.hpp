#ifndef SGDG_CONFIG_HPP_
#define SGDG_CONFIG_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgdg/cases.hpp"
#include "sgdg/solver.hpp"

namespace sgdg {

/// Step size of the default rule dt = kDefaultCfl * h_sub / lambda_max.
inline constexpr double kDefaultCfl = 0.1;

/// One experiment. Text keys are the field names, with `case`, `C_pen`
/// written as in the file format.
struct RunConfig {
  CaseKind kind = CaseKind::kBurgers;
  int p = 4;
  int n = 8;
  int n_elements = 9;
  /// Empty selects the CFL rule from the initial wave speed.
  std::optional<double> dt;
  double t_final = 0.88;
  double c_pen = 1e7;
  /// Empty selects 0.01 / p.
  std::optional<double> tau;
  std::optional<ForcedPenalty> force_gamma;
  std::vector<double> snapshot_times;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
};

using KeyValues = std::map<std::string, std::string>;

/// Keys accepted in config files, in canonical order.
const std::vector<std::string> &config_keys();

/// Default settings of a case (p, n, n_T, dt, final time, forcing).
RunConfig default_config(CaseKind kind);

/// Flat `key = value` lines; `#` starts a comment. Unknown keys, repeated
/// keys and malformed lines raise ConfigError.
KeyValues read_key_values(std::istream &in);
KeyValues read_key_values_file(const std::string &path);

/// Case defaults overridden by the given keys (`case` is required), then
/// validated.
RunConfig make_config(const KeyValues &values);

/// Throws ConfigError for inconsistent settings and NonInjectiveError when
/// the sensor needs a polynomial fit that sub-cell averages cannot pin down.
void validate(const RunConfig &config);

/// The config written back as key/value pairs (round-trips make_config).
KeyValues to_key_values(const RunConfig &config);

}  // namespace sgdg

#endif  // SGDG_CONFIG_HPP_
