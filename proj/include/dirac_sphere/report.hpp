#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirac_sphere/gauge.hpp"
#include "dirac_sphere/oracle.hpp"

namespace dirac_sphere::oracle {

enum class Verdict { pass, fail, recorded };

std::string to_string(Verdict v);

struct Claim {
  std::string id;
  std::string paper_ref;  // which formula or statement is being checked
  std::string description;
  std::string metric_name;
  double metric = 0.0;
  double tolerance = 0.0;
  bool forced = false;            // mathematically forced: verdict is pass or fail
  bool within_tolerance = false;  // metric <= tolerance
  Verdict verdict = Verdict::recorded;
  Grid grid;
  std::optional<double> constant;  // additive gap for constancy checks
  std::vector<std::pair<std::string, double>> values;
};

struct ReportInput {
  int model = 1;
  double k = 2.0;
  double R = 1.0;
  gauge::Model1Params model1;
  gauge::Model2Params model2;
  Grid grid;
  int levels = 3;
  /// Test hook: perturbs one factorized composition so the forced
  /// isospectrality claim fails.
  bool fault_injection = false;
};

struct VerificationReport {
  int model = 1;
  double k = 0.0;
  double R = 1.0;
  int levels = 0;
  Grid grid;
  std::vector<Claim> claims;

  bool forced_claims_pass() const;
  const Claim* find(const std::string& id) const;
};

/// Sampled difference f - g on [-4, 4] (2001 points): the mean is the
/// constant and the metric is the largest departure from it.
struct ConstancyResult {
  double mean = 0.0;
  double max_departure = 0.0;
  double tolerance = 0.0;  // 1e-9 (1 + |mean|)
  bool constant() const { return max_departure <= tolerance; }
};

ConstancyResult check_constancy(const RealFn& f, const RealFn& g);

/// Runs every claim in a fixed order. Construction errors (poles in the
/// window, off-branch parameters) propagate to the caller.
VerificationReport consistency_report(const ReportInput& input);

}  // namespace dirac_sphere::oracle
