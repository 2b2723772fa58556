#include "sgdg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "sgdg/errors.hpp"
#include "sgdg/quadrature.hpp"

namespace sgdg {
namespace {

constexpr char kMagic[8] = {'s', 'g', 'd', 'g', 'f', 'v', '0', '1'};

std::optional<FvSolution> read_cache(const std::filesystem::path &file,
                                     const CaseSetup &setup, int cells) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  std::int64_t stored_cells = 0, components = 0;
  double left = 0, right = 0, time = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char *>(&stored_cells), sizeof stored_cells);
  in.read(reinterpret_cast<char *>(&components), sizeof components);
  in.read(reinterpret_cast<char *>(&left), sizeof left);
  in.read(reinterpret_cast<char *>(&right), sizeof right);
  in.read(reinterpret_cast<char *>(&time), sizeof time);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 ||
      stored_cells != cells ||
      components != setup.law->num_components() || left != setup.left ||
      right != setup.right || time != setup.t_final) {
    return std::nullopt;
  }
  Eigen::MatrixXd values(components, cells);
  in.read(reinterpret_cast<char *>(values.data()),
          static_cast<std::streamsize>(sizeof(double) * values.size()));
  if (!in || in.peek() != std::char_traits<char>::eof() || !values.allFinite()) {
    return std::nullopt;
  }
  return FvSolution(left, right, time, std::move(values));
}

void write_cache(const std::filesystem::path &file, const FvSolution &s) {
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const std::int64_t cells = s.cells(), components = s.num_components();
    const double left = s.left(), right = s.right(), time = s.time();
    out.write(kMagic, sizeof kMagic);
    out.write(reinterpret_cast<const char *>(&cells), sizeof cells);
    out.write(reinterpret_cast<const char *>(&components), sizeof components);
    out.write(reinterpret_cast<const char *>(&left), sizeof left);
    out.write(reinterpret_cast<const char *>(&right), sizeof right);
    out.write(reinterpret_cast<const char *>(&time), sizeof time);
    out.write(reinterpret_cast<const char *>(s.values().data()),
              static_cast<std::streamsize>(sizeof(double) * s.values().size()));
    if (!out) return;  // caching is best effort
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

FvSolution::FvSolution(double left, double right, double time,
                       Eigen::MatrixXd values)
    : left_(left), right_(right), time_(time), values_(std::move(values)) {}

double FvSolution::operator()(int c, double x) const {
  const double pos = (x - left_) / width();
  const int cell = std::clamp(static_cast<int>(std::floor(pos)), 0, cells() - 1);
  return values_(c, cell);
}

std::vector<double> FvSolution::faces() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(cells()) - 1);
  for (int i = 1; i < cells(); ++i) out.push_back(left_ + i * width());
  return out;
}

FvSolution fv_solve(const CaseSetup &setup, int cells,
                    const FvOptions &options) {
  if (cells < 1) throw ConfigError("reference needs at least one cell");
  if (!(options.cfl > 0.0)) throw ConfigError("CFL number must be positive");
  const ConservationLaw &law = *setup.law;
  const int m = law.num_components();
  const double h = (setup.right - setup.left) / cells;
  const double t_final = options.t_final.value_or(setup.t_final);
  const bool periodic =
      setup.left_bc.kind() == BoundaryCondition::Kind::kPeriodic;

  // Exact cell averages of the initial data (5-point Gauss per piece).
  const GaussRule rule = gauss_rule(5);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(m, cells);
  for (int i = 0; i < cells; ++i) {
    std::vector<double> cuts{setup.left + i * h};
    for (double b : setup.breakpoints) {
      if (b > cuts.front() && b < cuts.front() + h) cuts.push_back(b);
    }
    cuts.push_back(setup.left + (i + 1) * h);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
      const double a = cuts[k], w = cuts[k + 1] - cuts[k];
      for (std::size_t g = 0; g < rule.size(); ++g) {
        const double x = a + 0.5 * w * (rule.nodes[g] + 1.0);
        u.col(i) += (0.5 * w * rule.weights[g] / h) * setup.initial(x);
      }
    }
  }

  Eigen::MatrixXd flux(m, cells + 1);
  double t = 0.0;
  State ul(m), ur(m);
  while (t < t_final) {
    double speed = 0.0;
    for (int i = 0; i < cells; ++i) {
      const double x = setup.left + (i + 0.5) * h;
      speed = std::max(speed, law.max_wave_speed(u.col(i), x));
    }
    if (!(speed > 0.0) || !std::isfinite(speed)) {
      throw SolverAbort("reference solver: invalid wave speed at t=" +
                        std::to_string(t));
    }
    double dt = options.cfl * h / speed;
    if (t + dt >= t_final) dt = t_final - t;

    for (int f = 1; f < cells; ++f) {
      ul = u.col(f - 1);
      ur = u.col(f);
      flux.col(f) = law.roe_flux(ul, ur, setup.left + f * h);
    }
    const State first = u.col(0), last = u.col(cells - 1);
    if (periodic) {
      flux.col(0) = law.roe_flux(last, first, setup.left);
      flux.col(cells) = flux.col(0);
    } else {
      flux.col(0) = law.roe_flux(
          boundary_ghost(setup.left_bc, first, last, law, setup.left), first,
          setup.left);
      flux.col(cells) = law.roe_flux(
          last, boundary_ghost(setup.right_bc, last, first, law, setup.right),
          setup.right);
    }
    for (int i = 0; i < cells; ++i) {
      u.col(i) -= (dt / h) * (flux.col(i + 1) - flux.col(i));
      if (law.has_source()) {
        const double x = setup.left + (i + 0.5) * h;
        u.col(i) += dt * law.source(u.col(i), x);
      }
    }
    t = (dt == t_final - t) ? t_final : t + dt;
    if (!u.allFinite()) {
      throw SolverAbort("reference solver: non-finite state at t=" +
                        std::to_string(t));
    }
  }
  return FvSolution(setup.left, setup.right, t_final, std::move(u));
}

FvSolution fv_reference(CaseKind kind, int cells,
                        const std::optional<std::filesystem::path> &cache_dir) {
  const CaseSetup setup = make_case(kind);
  std::filesystem::path file;
  if (cache_dir) {
    file = *cache_dir /
           (std::string(case_name(kind)) + "_" + std::to_string(cells) + ".bin");
    if (auto cached = read_cache(file, setup, cells)) return *cached;
  }
  FvSolution solution = fv_solve(setup, cells);
  if (cache_dir) write_cache(file, solution);
  return solution;
}

double l1_distance(const FvSolution &a, const FvSolution &b, int component) {
  if (a.left() != b.left() || a.right() != b.right()) {
    throw std::invalid_argument("solutions live on different domains");
  }
  // Merge both face sets; each piece is constant for both solutions.
  std::vector<double> cuts = a.faces();
  const std::vector<double> fb = b.faces();
  cuts.insert(cuts.end(), fb.begin(), fb.end());
  cuts.push_back(a.left());
  cuts.push_back(a.right());
  std::sort(cuts.begin(), cuts.end());
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double w = cuts[k + 1] - cuts[k];
    if (w <= 0.0) continue;
    const double x = 0.5 * (cuts[k] + cuts[k + 1]);
    sum += w * std::abs(a(component, x) - b(component, x));
  }
  return sum;
}

}  // namespace sgdg
