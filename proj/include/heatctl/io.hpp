#pragma once

// CSV and JSON writers. Every floating-point CSV field uses %.17g so that
// reruns with identical inputs produce byte-identical files.

#include "heatctl/analysis.hpp"
#include "heatctl/lemmas.hpp"
#include "heatctl/oracle.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace heatctl::io {

std::string format_double(double v);

/// m,t,c1..cK for each of the N_t + 1 nodes.
void write_nodes_csv(const std::filesystem::path& path, const Trajectory& y, const TimeGrid& grid);
/// m,t_start,t_end,c1..cK for each cell.
void write_cells_csv(const std::filesystem::path& path, const SourceTrajectory& f, const TimeGrid& grid);
/// piece,m,t,c1..cK; interior jump times appear once per adjacent piece.
void write_broken_csv(const std::filesystem::path& path, const BrokenTrajectory& y, const TimeGrid& grid);
/// j,tau,c1..cK for the impulses u_{j,n}.
void write_impulses_csv(const std::filesystem::path& path, const ImpulseSequence& u, const TimeGrid& grid);
/// i,t_start,t_end,c1..cK for the holds v_{i,n}.
void write_holds_csv(const std::filesystem::path& path, const HoldSequence& v, const TimeGrid& grid);

/// One row per ErrorRecord, columns as in records_header().
std::string records_header();
void write_records_csv(const std::filesystem::path& path, const ConvergenceReport& report);
/// tag,metric,slope,prefactor,rate,min_slope,excluded,degenerate,pass
void write_fits_csv(const std::filesystem::path& path, const ConvergenceReport& report);
nlohmann::ordered_json report_json(const ConvergenceReport& report);

/// experiment,label,p,slope,bound,kind,degenerate,pass
void write_slope_checks_csv(const std::filesystem::path& path,
                            const std::vector<std::pair<std::string, SlopeCheck>>& checks);
/// experiment,label,step,error
void write_slope_points_csv(const std::filesystem::path& path,
                            const std::vector<std::pair<std::string, SlopeCheck>>& checks);

nlohmann::ordered_json oracle_json(const OracleComparison& c);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace heatctl::io
