#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "morsecs/errors.hpp"
#include "morsecs/observables.hpp"
#include "morsecs/states.hpp"
#include "morsecs/version.hpp"

namespace morsecs::cli {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  if (v == 0.0) return "0";  // fold away negative zero
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// One result table: ordered metadata, column names, json-typed cells
/// (double, string or null). CSV and JSON emit the same numbers.
class Table {
 public:
  Table(std::vector<std::pair<std::string, std::string>> meta, std::vector<std::string> columns)
      : meta_(std::move(meta)), columns_(std::move(columns)) {}

  void add_row(std::vector<json> row) {
    if (row.size() != columns_.size()) throw ConfigError("internal: row width mismatch");
    rows_.push_back(std::move(row));
  }

  std::vector<json>& row(std::size_t i) { return rows_[i]; }
  void resize_rows(std::size_t n) { rows_.assign(n, std::vector<json>(columns_.size())); }

  void write_csv(std::ostream& out) const {
    for (const auto& [key, value] : meta_) out << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < columns_.size(); ++c)
      out << columns_[c] << (c + 1 < columns_.size() ? "," : "\n");
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        const json& cell = row[c];
        if (cell.is_number_float()) out << format_double(cell.get<double>());
        else if (cell.is_string()) out << cell.get<std::string>();
        else if (!cell.is_null()) out << cell.dump();
        out << (c + 1 < row.size() ? "," : "\n");
      }
    }
  }

  void write_json(std::ostream& out) const {
    json doc;
    json config = json::object();
    for (const auto& [key, value] : meta_) config[key] = value;
    doc["config"] = config;
    doc["columns"] = columns_;
    json rows = json::array();
    for (const auto& row : rows_) {
      json jrow = json::array();
      for (const json& cell : row) {
        if (cell.is_number_float() && cell.get<double>() == 0.0) jrow.push_back(0.0);
        else jrow.push_back(cell);
      }
      rows.push_back(std::move(jrow));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
  }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "csv") write_csv(out);
    else if (format == "json") write_json(out);
    else throw ConfigError("unknown output format: " + format);
  }

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

/// Evaluate fn(0..count-1) with results landing at their index; rows are
/// computed concurrently but emitted in input order.
template <typename Fn>
void indexed_parallel(std::size_t count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (hw == 1 || count < 8) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  const unsigned nworkers = std::min<std::size_t>(hw, count);
  workers.reserve(nworkers);
  for (unsigned w = 0; w < nworkers; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    }));
  }
  for (auto& worker : workers) worker.get();
}

std::vector<double> linspace(double lo, double hi, int steps, const char* what) {
  if (steps < 2) throw ConfigError(std::string(what) + ": grid needs at least 2 points");
  if (!(hi > lo)) throw ConfigError(std::string(what) + ": range must be increasing");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  return grid;
}

LadderVariant parse_variant(const std::string& name) {
  if (name == "osc" || name == "oscillator") return LadderVariant::OscillatorLike;
  if (name == "energy") return LadderVariant::EnergyLike;
  if (name == "term" || name == "terminating") return LadderVariant::Terminating;
  throw ConfigError("unknown variant '" + name + "' (expected osc, energy or term)");
}

std::vector<std::pair<std::string, std::string>> metadata(const RunConfig& config,
                                                          const ResolvedRun& run) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("command", config.command);
  meta.emplace_back("morsecs_version", kVersion);
  meta.emplace_back("molecule", config.molecule);
  meta.emplace_back("nu", format_double(run.params.nu));
  meta.emplace_back("n_max", std::to_string(run.params.n_max));
  meta.emplace_back("beta", format_double(run.params.beta));
  meta.emplace_back("hbar", format_double(run.params.hbar));
  meta.emplace_back("m_r", format_double(run.params.m_r));
  meta.emplace_back("variant", to_string(run.variant));
  meta.emplace_back("z", format_complex(run.z));
  meta.emplace_back("gamma", format_complex(run.gamma));
  if (config.r) meta.emplace_back("r", format_double(*config.r));
  meta.emplace_back("t_grid", format_double(config.t_min) + ":" + format_double(config.t_max) +
                                  ":" + std::to_string(config.t_steps));
  meta.emplace_back("x_grid", format_double(config.x_min) + ":" + format_double(config.x_max) +
                                  ":" + std::to_string(config.x_steps));
  if (config.command == "uncertainty") {
    meta.emplace_back("scan", config.scan_param);
    meta.emplace_back("scan_grid", format_double(config.scan_min) + ":" +
                                       format_double(config.scan_max) + ":" +
                                       std::to_string(config.scan_steps));
  }
  if (config.command == "mandel")
    meta.emplace_back("r_grid", format_double(config.r_min) + ":" + format_double(config.r_max) +
                                    ":" + std::to_string(config.r_steps));
  if (config.command == "density" && config.gamma_steps > 0)
    meta.emplace_back("gamma_grid", format_double(config.gamma_min) + ":" +
                                        format_double(config.gamma_max) + ":" +
                                        std::to_string(config.gamma_steps));
  meta.emplace_back("quad_order", std::to_string(config.quad_order));
  meta.emplace_back("format", config.format);
  return meta;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ConfigError("empty complex number");
  try {
    if (s.back() == 'i' || s.back() == 'j') {
      s.pop_back();
      // split at the last +/- that is not an exponent sign
      std::size_t split = std::string::npos;
      for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
          split = i;
          break;
        }
      }
      if (split == std::string::npos) {
        if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
        return {0.0, std::stod(s)};
      }
      const std::string re = s.substr(0, split);
      std::string im = s.substr(split);
      if (im == "+" || im == "-") im += "1";
      std::size_t used_re = 0, used_im = 0;
      const double rv = std::stod(re, &used_re);
      const double iv = std::stod(im, &used_im);
      if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(text);
      return {rv, iv};
    }
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(text);
    return {v, 0.0};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse complex number '" + text + "' (expected a, a+bi or bi)");
  }
}

std::string format_complex(std::complex<double> v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string s = format_double(v.real());
  s += (v.imag() < 0 ? "-" : "+");
  s += format_double(std::fabs(v.imag()));
  s += "i";
  return s;
}

ResolvedRun resolve(const RunConfig& config) {
  ResolvedRun run;
  if (config.molecule == "custom") {
    if (config.nu) run.params = ModelParams::from_nu(*config.nu);
    else if (config.omega_e && config.omega_e_xe)
      run.params = params_from_spectroscopic(*config.omega_e, *config.omega_e_xe);
    else throw ConfigError("custom molecule needs --nu or both --omega-e and --omega-e-xe");
  } else {
    std::vector<MoleculePreset> presets = builtin_presets();
    if (!config.presets_path.empty()) {
      auto extra = load_presets_file(config.presets_path);
      presets.insert(presets.end(), extra.begin(), extra.end());
    }
    const auto it = std::find_if(presets.begin(), presets.end(),
                                 [&](const MoleculePreset& p) { return p.name == config.molecule; });
    if (it == presets.end()) throw ConfigError("unknown molecule preset '" + config.molecule + "'");
    run.params = resolve_preset(*it);
  }
  run.variant = parse_variant(config.variant_name);
  run.z = parse_complex(config.z_text);
  if (config.r && config.gamma_text)
    throw ConfigError("--gamma and --r are mutually exclusive");
  if (config.r) run.gamma = std::tanh(*config.r);
  else run.gamma = parse_complex(config.gamma_text.value_or("0"));
  return run;
}

void run_spectrum(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  Table table(metadata(config, run), {"n", "E_n", "e_n", "epsilon_n"});
  for (int n = 0; n <= run.params.n_max; ++n)
    table.add_row({static_cast<double>(n), energy(run.params, n), shifted_energy(run.params, n),
                   run.params.epsilon(n)});
  table.write(out, config.format);
}

void run_trajectory(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  const auto times = linspace(config.t_min, config.t_max, config.t_steps, "time grid");
  const ObservableTables tables = build_tables(run.params, config.quad_order);
  const SqueezedState state = build_state(run.params, run.variant, run.z, run.gamma);
  Table table(metadata(config, run), {"t", "x_mean", "p_mean", "x_var", "p_var", "uncertainty"});
  table.resize_rows(times.size());
  indexed_parallel(times.size(), [&](std::size_t i) {
    const TrajectoryPoint pt = dispersions(state, tables, times[i]);
    table.row(i) = {pt.t, pt.x_mean, pt.p_mean, pt.x_var, pt.p_var, pt.uncertainty};
  });
  table.write(out, config.format);
}

void run_uncertainty(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  if (config.scan_param != "z" && config.scan_param != "gamma")
    throw ConfigError("--scan must be z or gamma");
  const bool over_gamma = config.scan_param == "gamma";
  if (over_gamma && config.scan_max >= 1.0)
    throw ConfigError("gamma scan must stay below 1 for normalizable states");
  const auto grid = linspace(config.scan_min, config.scan_max, config.scan_steps, "scan grid");
  const ObservableTables tables = build_tables(run.params, config.quad_order);
  Table table(metadata(config, run), {"param", "delta", "x_var", "p_var"});
  table.resize_rows(grid.size());
  indexed_parallel(grid.size(), [&](std::size_t i) {
    const std::complex<double> z = over_gamma ? run.z : std::complex<double>(grid[i], 0.0);
    const std::complex<double> g = over_gamma ? std::complex<double>(grid[i], 0.0) : run.gamma;
    const SqueezedState state = build_state(run.params, run.variant, z, g);
    const TrajectoryPoint pt = dispersions(state, tables, 0.0);
    table.row(i) = {grid[i], pt.uncertainty, pt.x_var, pt.p_var};
  });
  table.write(out, config.format);
}

void run_density(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  const auto xs = linspace(config.x_min, config.x_max, config.x_steps, "x grid");
  if (config.gamma_steps > 0) {
    if (config.gamma_max >= 1.0)
      throw ConfigError("gamma scan must stay below 1 for normalizable states");
    const auto gammas = linspace(config.gamma_min, config.gamma_max, config.gamma_steps, "gamma grid");
    Table table(metadata(config, run), {"x", "gamma", "density"});
    table.resize_rows(gammas.size() * xs.size());
    indexed_parallel(gammas.size(), [&](std::size_t gi) {
      const SqueezedState state =
          build_state(run.params, run.variant, run.z, {gammas[gi], 0.0});
      for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        const double density = std::norm(wavefunction(state, xs[xi], config.t_min));
        table.row(gi * xs.size() + xi) = {xs[xi], gammas[gi], density};
      }
    });
    table.write(out, config.format);
    return;
  }
  const auto times = linspace(config.t_min, config.t_max, config.t_steps, "time grid");
  const SqueezedState state = build_state(run.params, run.variant, run.z, run.gamma);
  Table table(metadata(config, run), {"x", "t", "density"});
  table.resize_rows(times.size() * xs.size());
  indexed_parallel(times.size(), [&](std::size_t ti) {
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      const double density = std::norm(wavefunction(state, xs[xi], times[ti]));
      table.row(ti * xs.size() + xi) = {xs[xi], times[ti], density};
    }
  });
  table.write(out, config.format);
}

void run_mandel(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  const auto rs = linspace(config.r_min, config.r_max, config.r_steps, "r grid");
  Table table(metadata(config, run), {"r", "gamma", "Q_energy", "Q_oscillator", "undefined"});
  table.resize_rows(rs.size());
  indexed_parallel(rs.size(), [&](std::size_t i) {
    const double gamma = std::tanh(rs[i]);
    std::vector<json> row = {rs[i], gamma, nullptr, nullptr, 0.0};
    bool undefined = false;
    try {
      row[2] = mandel_q(build_state(run.params, LadderVariant::EnergyLike, run.z, {gamma, 0.0}));
    } catch (const DomainError&) {
      undefined = true;
    }
    try {
      row[3] =
          mandel_q(build_state(run.params, LadderVariant::OscillatorLike, run.z, {gamma, 0.0}));
    } catch (const DomainError&) {
      undefined = true;
    }
    row[4] = undefined ? 1.0 : 0.0;
    table.row(i) = std::move(row);
  });
  table.write(out, config.format);
}

void run_residual(const RunConfig& config, std::ostream& out) {
  const ResolvedRun run = resolve(config);
  const SqueezedState state = build_state(run.params, run.variant, run.z, run.gamma);
  const ResidualReport report = residual(state);
  Table table(metadata(config, run),
              {"z", "gamma", "lambda1_abs", "lambda0_abs", "residual_norm"});
  table.add_row({format_complex(run.z), format_complex(run.gamma), std::abs(report.lambda1),
                 std::abs(report.lambda0), report.residual_norm});
  table.write(out, config.format);
}

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
  auto num = [&] {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("config file: bad number '" + value + "' for key '" + key + "'");
    }
  };
  auto count = [&] { return static_cast<int>(std::lround(num())); };
  if (key == "molecule") config.molecule = value;
  else if (key == "nu") config.nu = num();
  else if (key == "omega_e") config.omega_e = num();
  else if (key == "omega_e_xe") config.omega_e_xe = num();
  else if (key == "presets") config.presets_path = value;
  else if (key == "variant") config.variant_name = value;
  else if (key == "z") config.z_text = value;
  else if (key == "gamma") config.gamma_text = value;
  else if (key == "r") config.r = num();
  else if (key == "t_min") config.t_min = num();
  else if (key == "t_max") config.t_max = num();
  else if (key == "t_steps") config.t_steps = count();
  else if (key == "x_min") config.x_min = num();
  else if (key == "x_max") config.x_max = num();
  else if (key == "x_steps") config.x_steps = count();
  else if (key == "scan") config.scan_param = value;
  else if (key == "scan_min") config.scan_min = num();
  else if (key == "scan_max") config.scan_max = num();
  else if (key == "scan_steps") config.scan_steps = count();
  else if (key == "r_min") config.r_min = num();
  else if (key == "r_max") config.r_max = num();
  else if (key == "r_steps") config.r_steps = count();
  else if (key == "gamma_min") config.gamma_min = num();
  else if (key == "gamma_max") config.gamma_max = num();
  else if (key == "gamma_steps") config.gamma_steps = count();
  else if (key == "format") config.format = value;
  else if (key == "out") config.out = value;
  else if (key == "quad_order") config.quad_order = count();
  else throw ConfigError("config file: unknown key '" + key + "'");
}

// key = value lines, optional [section] headers (organizational only),
// '#' comments. Flags given on the command line override these values.
void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trimmed(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.front() == '[' && t.back() == ']') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config file line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trimmed(t.substr(0, eq));
    for (char& ch : key)
      if (ch == '-') ch = '_';
    apply_config_entry(config, key, trimmed(t.substr(eq + 1)));
  }
}

void add_common_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--molecule", config.molecule, "Molecule preset name, or 'custom'")
      ->capture_default_str();
  sub->add_option("--nu", config.nu, "Well depth parameter for --molecule custom");
  sub->add_option("--omega-e", config.omega_e, "Harmonicity constant (custom molecule)");
  sub->add_option("--omega-e-xe", config.omega_e_xe, "Anharmonicity constant (custom molecule)");
  sub->add_option("--presets", config.presets_path, "Extra molecule presets file");
  sub->add_option("--variant", config.variant_name, "Ladder variant: osc, energy or term")
      ->capture_default_str();
  sub->add_option("--z", config.z_text, "Coherent parameter (a, a+bi)")->capture_default_str();
  auto* gamma_opt = sub->add_option("--gamma", config.gamma_text, "Squeezing parameter, |gamma| < 1");
  sub->add_option("--r", config.r, "Squeezing rapidity, gamma = tanh(r)")->excludes(gamma_opt);
  sub->add_option("--t-min", config.t_min)->capture_default_str();
  sub->add_option("--t-max", config.t_max)->capture_default_str();
  sub->add_option("--t-steps", config.t_steps)->capture_default_str();
  sub->add_option("--x-min", config.x_min)->capture_default_str();
  sub->add_option("--x-max", config.x_max)->capture_default_str();
  sub->add_option("--x-steps", config.x_steps)->capture_default_str();
  sub->add_option("--format", config.format, "Output format: csv or json")->capture_default_str();
  sub->add_option("--out", config.out, "Output path, '-' for stdout")->capture_default_str();
  sub->add_option("--quad-order", config.quad_order, "Gauss order (0 = library default)")
      ->capture_default_str();
  // handled by the pre-scan in run_cli; declared so it parses and shows in help
  sub->add_option("--config")->description("Read defaults from a key = value file");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  // config file first, so explicit flags override its values
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc) load_config_file(config, argv[i + 1]);
      else if (arg.rfind("--config=", 0) == 0) load_config_file(config, arg.substr(9));
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  CLI::App app{"Squeezed coherent states of the Morse oscillator: spectra, trajectories,\n"
               "uncertainty products, densities and number statistics as CSV/JSON tables."};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Bound-state energies of the well");
  auto* trajectory = app.add_subcommand("trajectory", "Phase-space trajectory over a time grid");
  auto* uncertainty = app.add_subcommand("uncertainty", "Uncertainty product scan at t = 0");
  auto* density = app.add_subcommand("density", "Probability density over grids");
  auto* mandel = app.add_subcommand("mandel", "Mandel Q for both variants over tanh(r)");
  auto* residual_cmd = app.add_subcommand("residual", "Truncation residual of the eigenvalue equation");
  for (CLI::App* sub : {spectrum, trajectory, uncertainty, density, mandel, residual_cmd})
    add_common_options(sub, config);

  uncertainty->add_option("--scan", config.scan_param, "Scan parameter: z or gamma")
      ->capture_default_str();
  uncertainty->add_option("--scan-min", config.scan_min)->capture_default_str();
  uncertainty->add_option("--scan-max", config.scan_max)->capture_default_str();
  uncertainty->add_option("--scan-steps", config.scan_steps)->capture_default_str();
  mandel->add_option("--r-min", config.r_min)->capture_default_str();
  mandel->add_option("--r-max", config.r_max)->capture_default_str();
  mandel->add_option("--r-steps", config.r_steps)->capture_default_str();
  density->add_option("--gamma-min", config.gamma_min)->capture_default_str();
  density->add_option("--gamma-max", config.gamma_max)->capture_default_str();
  density->add_option("--gamma-steps", config.gamma_steps,
                      "When > 0, scan gamma at t = t-min instead of the time grid")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (config.out != "-") {
      file.open(config.out);
      if (!file) throw ConfigError("cannot open output file: " + config.out);
      sink = &file;
    }
    using Runner = void (*)(const RunConfig&, std::ostream&);
    const std::vector<std::pair<CLI::App*, std::pair<const char*, Runner>>> dispatch = {
        {spectrum, {"spectrum", run_spectrum}},       {trajectory, {"trajectory", run_trajectory}},
        {uncertainty, {"uncertainty", run_uncertainty}}, {density, {"density", run_density}},
        {mandel, {"mandel", run_mandel}},             {residual_cmd, {"residual", run_residual}},
    };
    for (const auto& [sub, entry] : dispatch) {
      if (sub->parsed()) {
        config.command = entry.first;
        entry.second(config, *sink);
        break;
      }
    }
    return 0;
  } catch (const AccuracyError& e) {
    err << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace morsecs::cli
