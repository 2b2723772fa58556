// sgdg: run experiments, convergence studies, injectivity checks and
// fine-grid references from the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgdg/config.hpp"
#include "sgdg/errors.hpp"
#include "sgdg/harness.hpp"
#include "sgdg/injectivity.hpp"
#include "sgdg/reference.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitNonInjective = 4;

// One string option per config key; set ones replace the file's value.
struct KeyFlags {
  std::map<std::string, std::string> values;

  void add_to(CLI::App &app) {
    for (const auto &key : sgdg::config_keys()) {
      app.add_option("--" + key, values[key], "override config key " + key);
    }
  }

  sgdg::KeyValues apply(const CLI::App &app, sgdg::KeyValues kv) const {
    for (const auto &key : sgdg::config_keys()) {
      if (app.count("--" + key) > 0) kv[key] = values.at(key);
    }
    return kv;
  }
};

sgdg::KeyValues load(const std::string &path) {
  return path.empty() ? sgdg::KeyValues{} : sgdg::read_key_values_file(path);
}

std::vector<int> parse_levels(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw sgdg::ConfigError("--levels: bad entry '" + item + "'");
    }
  }
  return out;
}

sgdg::RunOptions run_options(const sgdg::RunConfig &config) {
  sgdg::RunOptions options;
  options.cache_dir = std::filesystem::path(config.output_dir) / "reference_cache";
  return options;
}

int cmd_run(const sgdg::KeyValues &kv) {
  const sgdg::RunConfig config = sgdg::make_config(kv);
  const sgdg::RunResult result = sgdg::run_case(config, run_options(config));
  sgdg::write_outputs(result);
  std::cout << sgdg::summary_json(result);
  return 0;
}

int cmd_convergence(const sgdg::KeyValues &kv, const std::string &levels) {
  const sgdg::RunConfig config = sgdg::make_config(kv);
  const auto records =
      sgdg::convergence_study(config, parse_levels(levels), run_options(config));
  const std::string csv = sgdg::convergence_csv(records);
  std::filesystem::create_directories(config.output_dir);
  std::ofstream(std::filesystem::path(config.output_dir) / "convergence.csv") << csv;
  std::cout << csv;
  for (const auto &r : records) {
    if (r.failed) return kExitSolver;
  }
  return 0;
}

int cmd_injectivity(int p, int r, int d) {
  const sgdg::InjectivityReport report = sgdg::check_injectivity(p, r, d);
  std::cout << sgdg::to_json(report) << "\n";
  return report.injective ? 0 : kExitNonInjective;
}

int cmd_reference(const std::string &name, int cells,
                  const std::string &output_dir) {
  const sgdg::CaseKind kind = sgdg::parse_case(name);
  const std::filesystem::path dir(output_dir);
  const sgdg::FvSolution ref =
      sgdg::fv_reference(kind, cells, dir / "reference_cache");
  std::filesystem::create_directories(dir);
  const std::string file =
      "reference_" + std::string(sgdg::case_name(kind)) + "_" +
      std::to_string(cells) + ".csv";
  std::ofstream out(dir / file);
  out << "x";
  for (int c = 0; c < ref.num_components(); ++c) out << ",u" << c;
  out << "\n";
  char buf[32];
  for (int i = 0; i < ref.cells(); ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", ref.left() + (i + 0.5) * ref.width());
    out << buf;
    for (int c = 0; c < ref.num_components(); ++c) {
      std::snprintf(buf, sizeof buf, "%.12g", ref.values()(c, i));
      out << "," << buf;
    }
    out << "\n";
  }
  std::cout << (dir / file).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sub-cell penalized DG solver for 1D conservation laws"};
  app.require_subcommand(1);

  std::string config_path;
  KeyFlags run_flags;
  auto *run = app.add_subcommand("run", "run one experiment");
  run->add_option("--config", config_path, "flat key = value file");
  run_flags.add_to(*run);

  std::string conv_config;
  std::string levels = "8,16,32,64";
  KeyFlags conv_flags;
  auto *conv = app.add_subcommand("convergence", "refinement study");
  conv->add_option("--config", conv_config, "flat key = value file");
  conv->add_option("--levels", levels, "comma-separated element counts");
  conv_flags.add_to(*conv);

  int p = 0, r = 0, d = 1;
  auto *inj = app.add_subcommand("check-injectivity",
                                 "rank of sub-cell averaging on polynomials");
  inj->add_option("--p", p, "polynomial degree")->required();
  inj->add_option("--r", r, "refinement level, n = (r+1)^d")->required();
  inj->add_option("--d", d, "dimension (1 or 2)")->required();

  std::string ref_case;
  int cells = 8192;
  std::string ref_dir = ".";
  auto *ref = app.add_subcommand("reference", "fine-grid first-order solution");
  ref->add_option("--case", ref_case, "case name")->required();
  ref->add_option("--cells", cells, "number of cells");
  ref->add_option("--output_dir", ref_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_flags.apply(*run, load(config_path)));
    if (*conv) {
      return cmd_convergence(conv_flags.apply(*conv, load(conv_config)), levels);
    }
    if (*inj) return cmd_injectivity(p, r, d);
    if (*ref) return cmd_reference(ref_case, cells, ref_dir);
  } catch (const sgdg::ConfigError &e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sgdg::NonInjectiveError &e) {
    std::cerr << "non-injective configuration: " << e.what() << "\n";
    return kExitNonInjective;
  } catch (const sgdg::SolverAbort &e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
