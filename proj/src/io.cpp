#include "heatctl/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace heatctl::io {

namespace {

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

void mode_header(std::ostream& out, Eigen::Index modes) {
  for (Eigen::Index k = 1; k <= modes; ++k) out << ",c" << k;
  out << '\n';
}

void column(std::ostream& out, const Eigen::MatrixXd& m, Eigen::Index j) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) out << ',' << format_double(m(k, j));
  out << '\n';
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_nodes_csv(const std::filesystem::path& path, const Trajectory& y, const TimeGrid& grid) {
  auto out = open(path);
  out << "m,t";
  mode_header(out, y.nodes.rows());
  for (Eigen::Index m = 0; m < y.nodes.cols(); ++m) {
    out << m << ',' << format_double(grid.time(static_cast<int>(m)));
    column(out, y.nodes, m);
  }
}

void write_cells_csv(const std::filesystem::path& path, const SourceTrajectory& f, const TimeGrid& grid) {
  auto out = open(path);
  out << "m,t_start,t_end";
  mode_header(out, f.cells.rows());
  for (Eigen::Index m = 0; m < f.cells.cols(); ++m) {
    const int i = static_cast<int>(m);
    out << m << ',' << format_double(grid.time(i)) << ',' << format_double(grid.time(i + 1));
    column(out, f.cells, m);
  }
}

void write_broken_csv(const std::filesystem::path& path, const BrokenTrajectory& y, const TimeGrid& grid) {
  auto out = open(path);
  out << "piece,m,t";
  mode_header(out, y.modes());
  const int cells = y.cells_per_piece();
  for (int i = 0; i < y.subdivision(); ++i) {
    const auto& piece = y.pieces[i];
    for (Eigen::Index j = 0; j < piece.cols(); ++j) {
      const int m = i * cells + static_cast<int>(j);
      out << (i + 1) << ',' << m << ',' << format_double(grid.time(m));
      column(out, piece, j);
    }
  }
}

void write_impulses_csv(const std::filesystem::path& path, const ImpulseSequence& u, const TimeGrid& grid) {
  auto out = open(path);
  out << "j,tau";
  mode_header(out, u.impulses.rows());
  const Subdivision sub = grid.subdivide(u.subdivision());
  for (Eigen::Index j = 0; j < u.impulses.cols(); ++j) {
    const int idx = static_cast<int>(j) + 1;
    out << idx << ',' << format_double(grid.time(sub.node(idx)));
    column(out, u.impulses, j);
  }
}

void write_holds_csv(const std::filesystem::path& path, const HoldSequence& v, const TimeGrid& grid) {
  auto out = open(path);
  out << "i,t_start,t_end";
  mode_header(out, v.holds.rows());
  const Subdivision sub = grid.subdivide(v.subdivision());
  for (Eigen::Index i = 0; i < v.holds.cols(); ++i) {
    const int idx = static_cast<int>(i);
    out << (idx + 1) << ',' << format_double(grid.time(sub.node(idx))) << ','
        << format_double(grid.time(sub.node(idx + 1)));
    column(out, v.holds, i);
  }
}

std::string records_header() {
  return "tag,n,h,control_error_l2,state_error_l2,state_error_l4,state_error_linf,cost_gap,cost_difference,cost,"
         "iterations,residual";
}

void write_records_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
  auto out = open(path);
  out << records_header() << '\n';
  for (const auto& r : report.records) {
    out << to_string(r.tag) << ',' << r.n << ',' << format_double(r.h) << ',' << format_double(r.control_error)
        << ',' << format_double(r.state_error_l2) << ',' << format_double(r.state_error_l4) << ','
        << format_double(r.state_error_linf) << ',' << format_double(r.cost_gap) << ','
        << format_double(r.cost_difference) << ',' << format_double(r.cost) << ',' << r.iterations << ','
        << format_double(r.residual) << '\n';
  }
}

void write_fits_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
  auto out = open(path);
  out << "tag,metric,slope,prefactor,rate,min_slope,excluded,degenerate,pass\n";
  for (const auto& f : report.fits) {
    out << to_string(f.tag) << ',' << f.metric << ',' << format_double(f.slope) << ','
        << format_double(f.prefactor) << ',' << format_double(f.rate) << ',' << format_double(f.min_slope) << ','
        << f.excluded << ',' << flag(f.degenerate) << ',' << flag(f.pass) << '\n';
  }
}

nlohmann::ordered_json report_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {{"domain_length", report.domain.length},
                 {"control_a", report.domain.a},
                 {"control_b", report.domain.b},
                 {"horizon", report.horizon},
                 {"timesteps", report.steps},
                 {"modes", report.modes},
                 {"n_list", report.n_list},
                 {"target_norm", report.target_norm}};
  j["baseline"] = {{"cost", report.baseline_cost},
                   {"iterations", report.baseline_iterations},
                   {"residual", report.baseline_residual}};
  auto fits = nlohmann::ordered_json::array();
  for (const auto& f : report.fits) {
    fits.push_back({{"tag", to_string(f.tag)},
                    {"metric", f.metric},
                    {"slope", f.slope},
                    {"prefactor", f.prefactor},
                    {"rate", f.rate},
                    {"min_slope", f.min_slope},
                    {"excluded", f.excluded},
                    {"degenerate", f.degenerate},
                    {"pass", f.pass}});
  }
  j["fits"] = std::move(fits);
  j["sampled_cost_above_baseline"] = report.sampled_cost_above_baseline;
  j["degenerate"] = report.degenerate;
  j["passed"] = report.passed;
  return j;
}

void write_slope_checks_csv(const std::filesystem::path& path,
                            const std::vector<std::pair<std::string, SlopeCheck>>& checks) {
  auto out = open(path);
  out << "experiment,label,p,slope,bound,kind,degenerate,pass\n";
  for (const auto& [name, c] : checks) {
    out << name << ',' << c.label << ',' << format_double(c.p) << ',' << format_double(c.slope) << ','
        << format_double(c.bound) << ',' << (c.upper ? "max" : "min") << ',' << flag(c.degenerate) << ','
        << flag(c.pass) << '\n';
  }
}

void write_slope_points_csv(const std::filesystem::path& path,
                            const std::vector<std::pair<std::string, SlopeCheck>>& checks) {
  auto out = open(path);
  out << "experiment,label,step,error\n";
  for (const auto& [name, c] : checks) {
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
      out << name << ',' << c.label << ',' << format_double(c.steps[i]) << ',' << format_double(c.errors[i])
          << '\n';
    }
  }
}

nlohmann::ordered_json oracle_json(const OracleComparison& c) {
  return {{"solver", c.solver},
          {"unknowns", c.unknowns},
          {"relative_deviation", c.relative_deviation},
          {"cg_residual", c.cg_residual}};
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  auto out = open(path);
  out << j.dump(2) << '\n';
}

}  // namespace heatctl::io
