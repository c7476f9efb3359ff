#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "rebgk/dynamics.hpp"
#include "rebgk/scenario.hpp"

namespace rebgk {

/// TOML-style key/value text with nested tables; parse(serialize(cfg)) is
/// the identity on every field.
std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);
void save_config(const RunConfig& cfg, const std::string& path);

/// CSV (RFC-4180 line endings, '.' decimal separator, 17 significant
/// digits). Header:
/// t,N1,N2,N3,N4,N13,N14,N24,E,P,H,d1,d2,d3,d4,beta_tilde,mu1,mu2,mu3,mu4,Ut0,Ut1
void emit_timeseries(const std::vector<Diagnostics>& series, const std::string& path);

/// Snapshot rows are (p, f1..f4, J1..J4) with J evaluated from aux.
void emit_snapshot(const DistributionState& state, const AuxiliaryState& aux,
                   const Mixture& mix, const PhysicalConstants& pc,
                   const MomentumGrid& grid, const std::string& path);

/// Re-parse helpers for the emitted CSV (round-trip checks, plotting glue).
struct ParsedCsv {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
ParsedCsv parse_csv(const std::string& path);

constexpr const char* kTimeseriesHeader =
    "t,N1,N2,N3,N4,N13,N14,N24,E,P,H,d1,d2,d3,d4,beta_tilde,mu1,mu2,mu3,mu4,Ut0,Ut1";
constexpr const char* kSnapshotHeader = "p,f1,f2,f3,f4,J1,J2,J3,J4";

std::array<double, 22> timeseries_row(const Diagnostics& d);

/// Output directory precedence: explicit CLI flag, then the REBGK_OUT
/// environment variable, then the config value.
std::string resolve_output_dir(const std::string& cli_out, const RunConfig& cfg);

/// Builds the grid and initial state from cfg, runs the relaxation, and
/// writes timeseries.csv, snapshot_t*.csv and config.toml into out_dir
/// (partial output is flushed when a run aborts). Returns the run result.
RunResult execute_run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

}  // namespace rebgk
