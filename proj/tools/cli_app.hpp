#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "morsecs/morse_model.hpp"

namespace morsecs::cli {

/// Fully resolved run configuration; every field has a value once resolve()
/// has run, and the output metadata echoes all of them.
struct RunConfig {
  std::string command;
  std::string molecule = "hcl";  // preset name, or "custom" with nu / omega pair
  std::optional<double> nu;
  std::optional<double> omega_e;
  std::optional<double> omega_e_xe;
  std::string presets_path;  // extra molecule presets, key = value sections

  std::string variant_name = "energy";  // osc | energy | term
  std::string z_text = "0";
  std::optional<std::string> gamma_text;
  std::optional<double> r;  // gamma = tanh(r); exclusive with gamma

  double t_min = 0.0, t_max = 1.0;
  int t_steps = 200;
  double x_min = -1.0, x_max = 2.0;
  int x_steps = 200;

  // uncertainty scan
  std::string scan_param = "z";  // z | gamma
  double scan_min = 0.25, scan_max = 25.0;
  int scan_steps = 100;

  // mandel scan
  double r_min = -1.0, r_max = 1.2;
  int r_steps = 45;

  // density gamma scan (columns x,gamma,density at t = t_min when steps > 0)
  double gamma_min = 0.0, gamma_max = 0.9;
  int gamma_steps = 0;

  std::string format = "csv";  // csv | json
  std::string out = "-";
  int quad_order = 0;  // 0 = library default
};

/// "a", "a+bi", "a-bi", "bi" -> complex. Throws ConfigError on junk.
std::complex<double> parse_complex(const std::string& text);

std::string format_complex(std::complex<double> v);

/// Resolved pieces shared by every command.
struct ResolvedRun {
  ModelParams params;
  LadderVariant variant = LadderVariant::EnergyLike;
  std::complex<double> z;
  std::complex<double> gamma;
};

ResolvedRun resolve(const RunConfig& config);

void run_spectrum(const RunConfig& config, std::ostream& out);
void run_trajectory(const RunConfig& config, std::ostream& out);
void run_uncertainty(const RunConfig& config, std::ostream& out);
void run_density(const RunConfig& config, std::ostream& out);
void run_mandel(const RunConfig& config, std::ostream& out);
void run_residual(const RunConfig& config, std::ostream& out);

/// Parse argv, run the selected command, write the table to config.out (or
/// the given stream for "-"). Returns the process exit code: 0 success,
/// 2 usage/configuration, 3 accuracy, 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace morsecs::cli
