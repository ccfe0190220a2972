#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dualhop/relay.hpp"
#include "dualhop/ser.hpp"

namespace dualhop::cli {

/// A scenario file failed to parse or validate. field() names the key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class CaseTag { MimoMimo, MisoSimo, SimoMiso, Custom };

std::string_view to_string(CaseTag tag);

/// Antenna counts of both hops as (n_tx, n_rx).
struct AntennaLayout {
  int hop1_tx = 1;
  int hop1_rx = 1;
  int hop2_tx = 1;
  int hop2_rx = 1;
};

/// Parsed `key = value` scenario file. SNRs are kept in dB here; they are
/// converted to linear scale when a LinkScenario is built.
struct ScenarioFile {
  std::string name = "scenario";
  CaseTag case_tag = CaseTag::MimoMimo;
  AntennaLayout antennas;
  double hop1_m = 1.0;
  double hop2_m = 1.0;
  /// Only read for CUSTOM; the other tags fix the schemes.
  Scheme hop1_scheme = Scheme::StbcMrc;
  Scheme hop2_scheme = Scheme::StbcMrc;
  std::vector<double> hop1_snr_db;
  double hop2_start_db = 0.0;
  double hop2_stop_db = 20.0;
  double hop2_step_db = 1.0;
  std::vector<PskModulation> modulations;
  Combiner combiner = Combiner::Exact;
  std::optional<std::uint64_t> mc_seed;
  std::optional<std::size_t> mc_samples;
  std::optional<double> tol;
  // cdf command
  std::optional<double> cdf_hop2_snr_db;
  std::optional<double> cdf_gamma_start;
  std::optional<double> cdf_gamma_stop;
  std::optional<int> cdf_points;

  int n_s() const { return antennas.hop1_tx; }
  int n_r() const { return antennas.hop1_rx; }
  int n_d() const { return antennas.hop2_rx; }

  /// Hop-2 sweep grid start, start + step, ... up to stop (inclusive).
  std::vector<double> hop2_grid_db() const;

  /// LinkScenario at the given per-branch mean SNRs (dB).
  LinkScenario link(double hop1_db, double hop2_db) const;
};

/// Parses scenario text; throws ConfigError naming the offending key.
ScenarioFile parse_scenario(std::string_view text);

/// Reads and parses a file; unreadable files are reported as ConfigError
/// on field "scenario".
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Schemes implied by a case tag (CUSTOM returns the file's own schemes).
std::pair<Scheme, Scheme> hop_schemes(const ScenarioFile& file);

/// Same file with the case tag changed to one of the three named cases at
/// antenna budget n: MIMO_MIMO (n,n,n), MISO_SIMO (n,1,n), SIMO_MISO (1,n,1).
ScenarioFile as_case(const ScenarioFile& file, CaseTag tag, int n);

}  // namespace dualhop::cli
