#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac_sphere/gauge.hpp"
#include "dirac_sphere/oracle.hpp"
#include "dirac_sphere/report.hpp"
#include "dirac_sphere/spectra.hpp"

namespace dirac_sphere::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNonPhysical = 2,
  kStrictFailure = 3,
};

/// Invalid or unreadable configuration. line is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct PlotRange {
  double w_min = -4.0;
  double w_max = 4.0;
  int points = 801;
};

/// Parameters exactly as written in the config; physics objects are built
/// from them on demand so construction errors map to their own exit code.
struct RunConfig {
  int model = 1;
  double R = 1.0;
  double k = 2.0;
  double C1 = 0.0;
  // Model I
  std::optional<gauge::Model1Branch> branch;
  std::optional<double> C2;
  std::optional<double> C3;
  // Model II
  std::optional<gauge::Sign> sign_a;
  std::optional<gauge::Sign> sign_b;
  std::optional<double> alpha;
  std::optional<double> beta;
  spectra::PolynomialKind polynomial = spectra::PolynomialKind::jacobi;

  oracle::Grid grid;
  int levels = 3;
  std::string out;
  bool strict = false;
  bool fault_injection = false;
  PlotRange plot;
};

/// Parses a JSON config. Unknown keys, wrong types and out-of-range values
/// raise ConfigError with the line of the offending key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Physics objects derived from a config. Throw library errors.
gauge::Model1Params model1_params(const RunConfig& cfg);
gauge::Model2Params model2_params(const RunConfig& cfg);
oracle::ReportInput report_input(const RunConfig& cfg);

enum class Curve { A_u, Veff1, Veff2 };

Curve curve_from_string(const std::string& name);
std::string to_string(Curve c);

struct CurveData {
  std::string csv;
  std::vector<double> poles;  // inside the plotted range
};

std::string spectrum_csv(const RunConfig& cfg);
CurveData potential_csv(const RunConfig& cfg, Curve which);
CurveData wavefunction_csv(const RunConfig& cfg);
std::string report_json(const oracle::VerificationReport& report);

/// Writes through a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirac_sphere::cli
