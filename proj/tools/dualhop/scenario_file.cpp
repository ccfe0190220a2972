#include "scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dualhop::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ConfigError(std::string(key), "value must be finite");
    }
  }
  return value;
}

int parse_count(std::string_view key, std::string_view text) {
  const int n = parse_number<int>(key, text);
  if (n < 1) throw ConfigError(std::string(key), "antenna count must be >= 1");
  return n;
}

std::pair<int, int> parse_antennas(std::string_view key, std::string_view text) {
  const auto x = text.find('x');
  if (x == std::string_view::npos) {
    throw ConfigError(std::string(key), "expected <n_tx>x<n_rx>, got '" + std::string(text) + "'");
  }
  return {parse_count(key, trim(text.substr(0, x))), parse_count(key, trim(text.substr(x + 1)))};
}

CaseTag parse_case(std::string_view text) {
  if (text == "MIMO_MIMO") return CaseTag::MimoMimo;
  if (text == "MISO_SIMO") return CaseTag::MisoSimo;
  if (text == "SIMO_MISO") return CaseTag::SimoMiso;
  if (text == "CUSTOM") return CaseTag::Custom;
  throw ConfigError("case", "unknown case '" + std::string(text) +
                                "' (MIMO_MIMO, MISO_SIMO, SIMO_MISO, CUSTOM)");
}

Scheme parse_scheme_key(std::string_view key, std::string_view text) {
  if (auto s = parse_scheme(text)) return *s;
  throw ConfigError(std::string(key), "unknown scheme '" + std::string(text) +
                                          "' (MRC, STBC, STBC_MRC, TAS_MRC)");
}

void check_case_layout(const ScenarioFile& f) {
  switch (f.case_tag) {
    case CaseTag::MisoSimo:
      if (f.n_r() != 1) throw ConfigError("n_r", "MISO_SIMO requires a single relay antenna");
      break;
    case CaseTag::SimoMiso:
      if (f.n_s() != 1) throw ConfigError("n_s", "SIMO_MISO requires a single source antenna");
      if (f.n_d() != 1) {
        throw ConfigError("n_d", "SIMO_MISO requires a single destination antenna");
      }
      break;
    case CaseTag::MimoMimo:
    case CaseTag::Custom:
      break;
  }
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::MimoMimo: return "MIMO_MIMO";
    case CaseTag::MisoSimo: return "MISO_SIMO";
    case CaseTag::SimoMiso: return "SIMO_MISO";
    case CaseTag::Custom: return "CUSTOM";
  }
  return "?";
}

std::vector<double> ScenarioFile::hop2_grid_db() const {
  std::vector<double> grid;
  const double span = hop2_stop_db - hop2_start_db;
  const auto steps = static_cast<long>(std::floor(span / hop2_step_db + 1e-9));
  for (long i = 0; i <= steps; ++i) grid.push_back(hop2_start_db + i * hop2_step_db);
  return grid;
}

std::pair<Scheme, Scheme> hop_schemes(const ScenarioFile& file) {
  switch (file.case_tag) {
    case CaseTag::MimoMimo: return {Scheme::StbcMrc, Scheme::StbcMrc};
    case CaseTag::MisoSimo: return {Scheme::Stbc, Scheme::Mrc};
    case CaseTag::SimoMiso: return {Scheme::Mrc, Scheme::Stbc};
    case CaseTag::Custom: return {file.hop1_scheme, file.hop2_scheme};
  }
  return {file.hop1_scheme, file.hop2_scheme};
}

LinkScenario ScenarioFile::link(double hop1_db, double hop2_db) const {
  const auto [s1, s2] = hop_schemes(*this);
  LinkScenario s;
  s.hop1 = HopConfig{antennas.hop1_tx, antennas.hop1_rx, hop1_m, db_to_linear(hop1_db), s1};
  s.hop2 = HopConfig{antennas.hop2_tx, antennas.hop2_rx, hop2_m, db_to_linear(hop2_db), s2};
  s.combiner = combiner;
  return s;
}

ScenarioFile as_case(const ScenarioFile& file, CaseTag tag, int n) {
  ScenarioFile out = file;
  out.case_tag = tag;
  switch (tag) {
    case CaseTag::MimoMimo: out.antennas = {n, n, n, n}; break;
    case CaseTag::MisoSimo: out.antennas = {n, 1, 1, n}; break;
    case CaseTag::SimoMiso: out.antennas = {1, n, n, 1}; break;
    case CaseTag::Custom: break;
  }
  return out;
}

ScenarioFile parse_scenario(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    std::string key(trim(line.substr(0, eq)));
    if (!entries.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      throw ConfigError(key, "duplicate key");
    }
  }

  ScenarioFile f;
  bool node_counts = false;
  bool hop_counts = false;
  std::optional<std::pair<int, int>> hop1_layout;
  std::optional<std::pair<int, int>> hop2_layout;
  bool have_modulations = false;

  for (const auto& [key, value] : entries) {
    if (key == "name") {
      f.name = value;
    } else if (key == "case") {
      f.case_tag = parse_case(value);
    } else if (key == "n_s") {
      f.antennas.hop1_tx = parse_count(key, value);
      node_counts = true;
    } else if (key == "n_r") {
      f.antennas.hop1_rx = f.antennas.hop2_tx = parse_count(key, value);
      node_counts = true;
    } else if (key == "n_d") {
      f.antennas.hop2_rx = parse_count(key, value);
      node_counts = true;
    } else if (key == "hop1_antennas") {
      hop1_layout = parse_antennas(key, value);
      hop_counts = true;
    } else if (key == "hop2_antennas") {
      hop2_layout = parse_antennas(key, value);
      hop_counts = true;
    } else if (key == "m" || key == "hop1_m" || key == "hop2_m") {
      // handled below so per-hop keys override the shared one
    } else if (key == "hop1_scheme") {
      f.hop1_scheme = parse_scheme_key(key, value);
    } else if (key == "hop2_scheme") {
      f.hop2_scheme = parse_scheme_key(key, value);
    } else if (key == "hop1_snr_db") {
      for (auto item : split_list(value)) f.hop1_snr_db.push_back(parse_number<double>(key, item));
    } else if (key == "hop2_start_db") {
      f.hop2_start_db = parse_number<double>(key, value);
    } else if (key == "hop2_stop_db") {
      f.hop2_stop_db = parse_number<double>(key, value);
    } else if (key == "hop2_step_db") {
      f.hop2_step_db = parse_number<double>(key, value);
    } else if (key == "modulations") {
      have_modulations = true;
      for (auto item : split_list(value)) {
        const auto mod = parse_modulation(item);
        if (!mod) {
          throw ConfigError(key, "unknown modulation '" + std::string(item) +
                                     "' (BPSK, PSK8, PSK16, ...)");
        }
        f.modulations.push_back(*mod);
      }
    } else if (key == "combiner") {
      const auto c = parse_combiner(value);
      if (!c) throw ConfigError(key, "expected exact or harmonic, got '" + value + "'");
      f.combiner = *c;
    } else if (key == "mc_seed") {
      f.mc_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "mc_samples") {
      f.mc_samples = parse_number<std::size_t>(key, value);
      if (*f.mc_samples < 1) throw ConfigError(key, "must be >= 1");
    } else if (key == "tol") {
      f.tol = parse_number<double>(key, value);
    } else if (key == "cdf_hop2_snr_db") {
      f.cdf_hop2_snr_db = parse_number<double>(key, value);
    } else if (key == "cdf_gamma_start") {
      f.cdf_gamma_start = parse_number<double>(key, value);
    } else if (key == "cdf_gamma_stop") {
      f.cdf_gamma_stop = parse_number<double>(key, value);
    } else if (key == "cdf_points") {
      f.cdf_points = parse_number<int>(key, value);
      if (*f.cdf_points < 1) throw ConfigError(key, "must be >= 1");
    } else {
      throw ConfigError(key, "unknown key");
    }
  }

  auto fading = [&](std::string_view key) -> std::optional<double> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    const double m = parse_number<double>(key, it->second);
    if (!(m >= 0.5)) throw ConfigError(std::string(key), "Nakagami m must be >= 0.5");
    return m;
  };
  const double shared_m = fading("m").value_or(1.0);
  f.hop1_m = fading("hop1_m").value_or(shared_m);
  f.hop2_m = fading("hop2_m").value_or(shared_m);

  if (node_counts && hop_counts) {
    throw ConfigError("hop1_antennas", "give either n_s/n_r/n_d or hop1_antennas/hop2_antennas");
  }
  if (hop_counts) {
    if (!hop1_layout || !hop2_layout) {
      throw ConfigError(hop1_layout ? "hop2_antennas" : "hop1_antennas", "missing");
    }
    f.antennas = {hop1_layout->first, hop1_layout->second, hop2_layout->first,
                  hop2_layout->second};
    if (f.antennas.hop1_rx != f.antennas.hop2_tx) {
      throw ConfigError("hop2_antennas",
                        "relay antenna count mismatch: hop 1 ends on " +
                            std::to_string(f.antennas.hop1_rx) + " antennas, hop 2 starts on " +
                            std::to_string(f.antennas.hop2_tx));
    }
  }

  if (f.hop1_snr_db.empty()) throw ConfigError("hop1_snr_db", "at least one value required");
  if (!have_modulations || f.modulations.empty()) {
    throw ConfigError("modulations", "at least one modulation required");
  }
  if (!(f.hop2_step_db > 0.0)) throw ConfigError("hop2_step_db", "must be positive");
  if (f.hop2_stop_db < f.hop2_start_db) {
    throw ConfigError("hop2_stop_db", "must not be below hop2_start_db");
  }
  if (f.tol && !(*f.tol > 0.0 && *f.tol <= 1e-2)) {
    throw ConfigError("tol", "must lie in (0, 1e-2]");
  }
  if (f.cdf_gamma_start && *f.cdf_gamma_start < 0.0) {
    throw ConfigError("cdf_gamma_start", "must be >= 0");
  }
  check_case_layout(f);

  try {
    f.link(f.hop1_snr_db.front(), f.hop2_start_db).validate();
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    throw ConfigError(what.starts_with("hop2") ? "hop2_scheme" : "hop1_scheme", what);
  }
  return f;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario", "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

}  // namespace dualhop::cli
