#include "dirac_sphere/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "dirac_sphere/errors.hpp"
#include "json.hpp"

namespace dirac_sphere::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Config parsing

int line_at(const std::string& text, std::size_t pos) {
  pos = std::min(pos, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n'));
}

/// Line of the key at the end of `path`, searching each key after the previous one.
int line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  for (const auto& key : path) {
    const std::string quoted = "\"" + key + "\"";
    std::size_t found = text.find(quoted, pos);
    while (found != std::string::npos) {
      std::size_t after = found + quoted.size();
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after < text.size() && text[after] == ':') break;
      found = text.find(quoted, found + 1);
    }
    if (found == std::string::npos) return 0;
    pos = found + quoted.size();
  }
  return line_at(text, pos);
}

class ConfigReader {
 public:
  ConfigReader(const std::string& text, const json& root) : text_(text), root_(root) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
    throw ConfigError(what, line_of(text_, path));
  }

  static std::string dotted(const std::vector<std::string>& path) {
    std::string s;
    for (const auto& p : path) s += (s.empty() ? "" : ".") + p;
    return s;
  }

  const json* find(const std::vector<std::string>& path) const {
    const json* node = &root_;
    for (const auto& key : path) {
      if (!node->is_object() || !node->contains(key)) return nullptr;
      node = &(*node)[key];
    }
    return node;
  }

  bool has(const std::vector<std::string>& path) const { return find(path) != nullptr; }

  std::optional<double> number(const std::vector<std::string>& path) const {
    const json* v = find(path);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(path, "'" + dotted(path) + "' must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(path, "'" + dotted(path) + "' must be finite");
    return x;
  }

  std::optional<long long> integer(const std::vector<std::string>& path) const {
    const json* v = find(path);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(path, "'" + dotted(path) + "' must be an integer");
    return v->get<long long>();
  }

  std::optional<bool> boolean(const std::vector<std::string>& path) const {
    const json* v = find(path);
    if (!v) return std::nullopt;
    if (!v->is_boolean()) fail(path, "'" + dotted(path) + "' must be true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::vector<std::string>& path) const {
    const json* v = find(path);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(path, "'" + dotted(path) + "' must be a string");
    return v->get<std::string>();
  }

  void only_keys(const std::vector<std::string>& path, const std::set<std::string>& allowed) const {
    const json* node = path.empty() ? &root_ : find(path);
    if (!node) return;
    if (!node->is_object()) {
      if (path.empty()) throw ConfigError("config must be a JSON object", 1);
      fail(path, "'" + dotted(path) + "' must be an object");
    }
    for (const auto& item : node->items()) {
      if (!allowed.count(item.key())) {
        auto p = path;
        p.push_back(item.key());
        fail(p, "unknown key '" + dotted(p) + "'");
      }
    }
  }

 private:
  const std::string& text_;
  const json& root_;
};

gauge::Sign parse_sign(const ConfigReader& r, const std::vector<std::string>& path,
                       const std::string& s) {
  if (s == "+" || s == "plus") return gauge::Sign::plus;
  if (s == "-" || s == "minus") return gauge::Sign::minus;
  r.fail(path, "'" + ConfigReader::dotted(path) + "' must be \"+\" or \"-\"");
}

// ---------------------------------------------------------------------------
// Formatting

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> sample_points(const PlotRange& plot) {
  std::vector<double> w(static_cast<std::size_t>(plot.points));
  const double step = (plot.w_max - plot.w_min) / (plot.points - 1);
  for (int i = 0; i < plot.points; ++i) w[i] = plot.w_min + i * step;
  w.back() = plot.w_max;
  return w;
}

std::vector<double> poles_in_range(const std::vector<double>& poles, const PlotRange& plot) {
  std::vector<double> out;
  for (double p : poles) {
    if (p >= plot.w_min && p <= plot.w_max) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rows "w,v1,v2,..." with a "w,nan,..." marker at every pole.
CurveData tabulate(const std::string& header, const std::vector<std::function<double(double)>>& fns,
                   const std::vector<double>& poles, const PlotRange& plot) {
  CurveData data;
  data.poles = poles_in_range(poles, plot);
  std::ostringstream os;
  os << header << '\n';
  auto gap_row = [&](double w) {
    os << num(w);
    for (std::size_t i = 0; i < fns.size(); ++i) os << ",nan";
    os << '\n';
  };
  std::size_t next_pole = 0;
  for (double w : sample_points(plot)) {
    while (next_pole < data.poles.size() && data.poles[next_pole] <= w) {
      if (data.poles[next_pole] < w) gap_row(data.poles[next_pole]);
      ++next_pole;
    }
    os << num(w);
    for (const auto& f : fns) {
      double v;
      try {
        v = f(w);
      } catch (const PoleError&) {
        v = std::numeric_limits<double>::quiet_NaN();
      }
      os << ',' << num(std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN());
    }
    os << '\n';
  }
  for (; next_pole < data.poles.size(); ++next_pole) gap_row(data.poles[next_pole]);
  data.csv = os.str();
  return data;
}

std::string poles_note(const std::string& file, const std::vector<double>& poles) {
  std::ostringstream os;
  os << "poles of " << file << " inside the plotted range (rows with value nan):\n";
  for (double p : poles) os << num(p) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Output

fs::path output_dir(const RunConfig& cfg, const std::string& override_out) {
  if (!override_out.empty()) return override_out;
  if (!cfg.out.empty()) return cfg.out;
  if (const char* env = std::getenv("DIRAC_SPHERE_OUT"); env && *env) return env;
  return fs::current_path();
}

struct Writer {
  std::ostream& out;
  std::vector<fs::path> written;

  void file(const fs::path& path, const std::string& content) {
    write_atomic(path, content);
    written.push_back(path);
    out << "wrote " << path.string() << '\n';
  }

  void curve(const fs::path& path, const CurveData& data) {
    file(path, data.csv);
    if (!data.poles.empty()) {
      fs::path note = path;
      note.replace_extension(".poles.txt");
      file(note, poles_note(path.filename().string(), data.poles));
    }
  }
};

// ---------------------------------------------------------------------------
// Commands

struct Overrides {
  std::string config;
  std::string out;
  double k = 0.0;
  int levels = 0;
  double grid_L = 0.0;
  int grid_N = 0;
  bool strict = false;
  std::string which;
  CLI::Option* k_opt = nullptr;
  CLI::Option* levels_opt = nullptr;
  CLI::Option* L_opt = nullptr;
  CLI::Option* N_opt = nullptr;
};

void apply_overrides(RunConfig& cfg, const Overrides& o) {
  if (o.k_opt && o.k_opt->count()) {
    if (!std::isfinite(o.k)) throw ConfigError("--k must be finite", 0);
    cfg.k = o.k;
  }
  if (o.levels_opt && o.levels_opt->count()) {
    if (o.levels < 1) throw ConfigError("--levels must be at least 1", 0);
    cfg.levels = o.levels;
  }
  if (o.L_opt && o.L_opt->count()) {
    if (!(o.grid_L > 0.0) || !std::isfinite(o.grid_L)) throw ConfigError("--grid-L must be > 0", 0);
    cfg.grid.L = o.grid_L;
  }
  if (o.N_opt && o.N_opt->count()) {
    if (o.grid_N < 3) throw ConfigError("--grid-N must be at least 3", 0);
    cfg.grid.N = o.grid_N;
  }
  if (o.strict) cfg.strict = true;
}

std::string model_tag(const RunConfig& cfg) { return "model" + std::to_string(cfg.model); }

int cmd_spectrum(const RunConfig& cfg, const fs::path& dir, Writer& w) {
  const std::string csv = spectrum_csv(cfg);
  w.file(dir / ("spectrum_" + model_tag(cfg) + ".csv"), csv);
  return kOk;
}

int cmd_potential(const RunConfig& cfg, const fs::path& dir, const std::string& which, Writer& w) {
  const Curve c = curve_from_string(which);
  const CurveData data = potential_csv(cfg, c);
  w.curve(dir / ("potential_" + to_string(c) + "_" + model_tag(cfg) + ".csv"), data);
  return kOk;
}

int cmd_wavefunction(const RunConfig& cfg, const fs::path& dir, Writer& w) {
  const CurveData data = wavefunction_csv(cfg);
  w.curve(dir / ("wavefunction_" + model_tag(cfg) + ".csv"), data);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const fs::path& dir, Writer& w) {
  const auto report = oracle::consistency_report(report_input(cfg));
  w.file(dir / ("report_" + model_tag(cfg) + ".json"), report_json(report));
  int forced = 0, failed = 0;
  for (const auto& c : report.claims) {
    if (!c.forced) continue;
    ++forced;
    if (c.verdict != oracle::Verdict::pass) ++failed;
  }
  w.out << report.claims.size() << " claims, " << forced << " forced, " << failed
        << " forced failures\n";
  if (cfg.strict && failed > 0) return kStrictFailure;
  return kOk;
}

RunConfig fig1_config() {
  RunConfig cfg;
  cfg.model = 1;
  cfg.R = 1.0;
  cfg.k = 2.0;
  cfg.C1 = 0.4;
  cfg.branch = gauge::Model1Branch::c2_half_c3_k_plus_1;
  cfg.levels = 3;
  return cfg;
}

RunConfig fig2_config() {
  RunConfig cfg;
  cfg.model = 2;
  cfg.R = 1.0;
  cfg.k = 2.0;
  cfg.C1 = 0.1;
  cfg.levels = 3;
  return cfg;
}

constexpr const char* kFig2Note =
    "The figure's caption does not state its parameters. These files use\n"
    "k = 2, R = 1, C1 = 0.1 and the first admissible sign choice with\n"
    "alpha*beta > 0, which gives alpha = 1, beta = 1/3 and keeps the pole of\n"
    "a1 tanh w - a2 off the real line.\n";

int cmd_figures(const std::string& which, const Overrides& o, const fs::path& base, Writer& w) {
  if (which != "fig1" && which != "fig2") {
    throw ConfigError("--which must be fig1 or fig2, got '" + which + "'", 0);
  }
  const bool fig1 = which == "fig1";
  RunConfig cfg = fig1 ? fig1_config() : fig2_config();
  if (o.k_opt && o.k_opt->count()) {
    if (!std::isfinite(o.k)) throw ConfigError("--k must be finite", 0);
    cfg.k = o.k;
  }
  if (o.levels_opt && o.levels_opt->count()) {
    if (o.levels < 1) throw ConfigError("--levels must be at least 1", 0);
    cfg.levels = o.levels;
  }
  const fs::path dir = base / which;
  const CurveData a = potential_csv(cfg, Curve::A_u);
  const CurveData v1 = potential_csv(cfg, Curve::Veff1);
  const CurveData v2 = potential_csv(cfg, Curve::Veff2);
  std::string spectrum;
  std::string spectrum_name = "spectrum.csv";
  if (fig1) {
    RunConfig s = cfg;
    s.k = 200.0;
    spectrum = spectrum_csv(s);
    spectrum_name = "spectrum_k200.csv";
  } else {
    spectrum = spectrum_csv(cfg);
  }
  w.curve(dir / "A_u.csv", a);
  w.curve(dir / "Veff1.csv", v1);
  w.curve(dir / "Veff2.csv", v2);
  w.file(dir / spectrum_name, spectrum);
  if (!fig1) w.file(dir / "NOTE.txt", kFig2Note);
  return kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), line_at(text, e.byte));
  }
  const ConfigReader r(text, root);
  r.only_keys({}, {"model", "R", "k", "C1", "branch", "C2", "C3", "sign_a", "sign_b", "alpha",
                   "beta", "polynomial", "grid", "levels", "out", "strict", "fault_injection",
                   "plot"});
  r.only_keys({"grid"}, {"L", "N"});
  r.only_keys({"plot"}, {"w_min", "w_max", "points"});

  RunConfig cfg;
  const auto model = r.integer({"model"});
  if (!model) throw ConfigError("missing required key 'model'", 1);
  if (*model != 1 && *model != 2) r.fail({"model"}, "'model' must be 1 or 2");
  cfg.model = static_cast<int>(*model);

  for (const char* key : {"R", "k", "C1"}) {
    if (!r.has({key})) throw ConfigError(std::string("missing required key '") + key + "'", 1);
  }
  cfg.R = *r.number({"R"});
  if (!(cfg.R > 0.0)) r.fail({"R"}, "'R' must be positive");
  cfg.k = *r.number({"k"});
  cfg.C1 = *r.number({"C1"});

  if (cfg.model == 1) {
    for (const char* key : {"sign_a", "sign_b", "alpha", "beta", "polynomial"}) {
      if (r.has({key})) r.fail({key}, std::string("'") + key + "' is not used by model 1");
    }
    cfg.C2 = r.number({"C2"});
    cfg.C3 = r.number({"C3"});
    if (auto b = r.string({"branch"})) {
      if (cfg.C2 || cfg.C3) r.fail({"branch"}, "give either 'branch' or 'C2' and 'C3', not both");
      try {
        cfg.branch = gauge::model1_branch_from_string(*b);
      } catch (const DomainError& e) {
        r.fail({"branch"}, e.what());
      }
    } else if (!cfg.C2 || !cfg.C3) {
      throw ConfigError("model 1 needs 'branch' or both 'C2' and 'C3'", 1);
    }
  } else {
    for (const char* key : {"branch", "C2", "C3"}) {
      if (r.has({key})) r.fail({key}, std::string("'") + key + "' is not used by model 2");
    }
    const bool has_signs = r.has({"sign_a"}) || r.has({"sign_b"});
    const bool has_ab = r.has({"alpha"}) || r.has({"beta"});
    if (has_signs && has_ab) r.fail({"alpha"}, "give either sign_a/sign_b or alpha/beta, not both");
    if (has_signs) {
      if (!r.has({"sign_a"}) || !r.has({"sign_b"})) {
        r.fail({r.has({"sign_a"}) ? "sign_a" : "sign_b"}, "sign_a and sign_b go together");
      }
      cfg.sign_a = parse_sign(r, {"sign_a"}, *r.string({"sign_a"}));
      cfg.sign_b = parse_sign(r, {"sign_b"}, *r.string({"sign_b"}));
    }
    if (has_ab) {
      if (!r.has({"alpha"}) || !r.has({"beta"})) {
        r.fail({r.has({"alpha"}) ? "alpha" : "beta"}, "alpha and beta go together");
      }
      cfg.alpha = r.number({"alpha"});
      cfg.beta = r.number({"beta"});
    }
    if (auto p = r.string({"polynomial"})) {
      if (*p == "jacobi") {
        cfg.polynomial = spectra::PolynomialKind::jacobi;
      } else if (*p == "exceptional_x1") {
        cfg.polynomial = spectra::PolynomialKind::exceptional_x1;
      } else {
        r.fail({"polynomial"}, "'polynomial' must be \"jacobi\" or \"exceptional_x1\"");
      }
    }
  }

  if (auto L = r.number({"grid", "L"})) {
    if (!(*L > 0.0)) r.fail({"grid", "L"}, "'grid.L' must be positive");
    cfg.grid.L = *L;
  }
  if (auto N = r.integer({"grid", "N"})) {
    if (*N < 3 || *N > 1000000) r.fail({"grid", "N"}, "'grid.N' must be between 3 and 1000000");
    cfg.grid.N = static_cast<int>(*N);
  }
  if (auto levels = r.integer({"levels"})) {
    if (*levels < 1 || *levels > 1000) r.fail({"levels"}, "'levels' must be between 1 and 1000");
    cfg.levels = static_cast<int>(*levels);
  }
  if (auto out = r.string({"out"})) cfg.out = *out;
  if (auto strict = r.boolean({"strict"})) cfg.strict = *strict;
  if (auto fault = r.boolean({"fault_injection"})) cfg.fault_injection = *fault;
  if (auto v = r.number({"plot", "w_min"})) cfg.plot.w_min = *v;
  if (auto v = r.number({"plot", "w_max"})) cfg.plot.w_max = *v;
  if (auto v = r.integer({"plot", "points"})) {
    if (*v < 2 || *v > 10000000) r.fail({"plot", "points"}, "'plot.points' must be at least 2");
    cfg.plot.points = static_cast<int>(*v);
  }
  if (!(cfg.plot.w_min < cfg.plot.w_max)) {
    r.fail({"plot", "w_max"}, "'plot.w_min' must be below 'plot.w_max'");
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'", 0);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

gauge::Model1Params model1_params(const RunConfig& cfg) {
  if (cfg.branch) return gauge::Model1Params::on_branch(cfg.C1, *cfg.branch, cfg.k);
  return gauge::Model1Params{cfg.C1, cfg.C2.value_or(0.0), cfg.C3.value_or(0.0), std::nullopt};
}

gauge::Model2Params model2_params(const RunConfig& cfg) {
  gauge::AlphaBeta ab;
  if (cfg.alpha && cfg.beta) {
    ab = {*cfg.alpha, *cfg.beta};
  } else if (cfg.sign_a && cfg.sign_b) {
    ab = gauge::alpha_beta(cfg.k, *cfg.sign_a, *cfg.sign_b);
  } else {
    ab = gauge::default_alpha_beta(cfg.k);
  }
  return gauge::Model2Params::from_alpha_beta(cfg.C1, ab.alpha, ab.beta, cfg.k);
}

oracle::ReportInput report_input(const RunConfig& cfg) {
  oracle::ReportInput in;
  in.model = cfg.model;
  in.k = cfg.k;
  in.R = cfg.R;
  in.grid = cfg.grid;
  in.levels = cfg.levels;
  in.fault_injection = cfg.fault_injection;
  if (cfg.model == 1) {
    in.model1 = model1_params(cfg);
  } else {
    in.model2 = model2_params(cfg);
  }
  return in;
}

Curve curve_from_string(const std::string& name) {
  if (name == "A_u") return Curve::A_u;
  if (name == "Veff1") return Curve::Veff1;
  if (name == "Veff2") return Curve::Veff2;
  throw ConfigError("--which must be A_u, Veff1 or Veff2, got '" + name + "'", 0);
}

std::string to_string(Curve c) {
  switch (c) {
    case Curve::A_u:
      return "A_u";
    case Curve::Veff1:
      return "Veff1";
    case Curve::Veff2:
      break;
  }
  return "Veff2";
}

std::string spectrum_csv(const RunConfig& cfg) {
  std::vector<spectra::SpectralLine> lines;
  if (cfg.model == 1) {
    const auto p = model1_params(cfg);
    for (int n = 0; n < cfg.levels; ++n) lines.push_back(spectra::energy_model1(n, p, cfg.k, cfg.R));
  } else {
    const auto p = model2_params(cfg);
    for (int m = 0; m < cfg.levels; ++m) {
      lines.push_back(spectra::energy_model2(m, p.alpha, p.beta, p.k, cfg.R));
    }
  }
  std::ostringstream os;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  os << "level,E_sq_bar,E_minus,E_plus,radicand_ok,normalizable,physical,reason\n";
  for (const auto& l : lines) {
    os << l.level << ',' << num(l.E_sq_bar) << ',' << num(l.E_minus()) << ',' << num(l.E_plus())
       << ',' << flag(l.radicand_ok) << ',' << flag(l.normalizable) << ',' << flag(l.physical)
       << ',' << l.reason << '\n';
  }
  return os.str();
}

CurveData potential_csv(const RunConfig& cfg, Curve which) {
  std::function<double(double)> f;
  std::vector<double> poles;
  if (cfg.model == 1) {
    const auto p = model1_params(cfg);
    if (which == Curve::A_u) {
      f = gauge::a_u_model1(p);
    } else {
      const auto v = gauge::v_eff_model1(p, cfg.k, which == Curve::Veff1 ? 1 : 2);
      f = v.eval;
      poles = v.poles;
    }
  } else {
    const auto p = model2_params(cfg);
    if (which == Curve::A_u) {
      const auto g = gauge::gauge_model2(p);
      f = g.value;
      poles = g.poles;
    } else {
      const auto v = gauge::v_eff_model2(p, which == Curve::Veff1 ? 1 : 2);
      f = v.eval;
      poles = v.poles;
    }
  }
  return tabulate("w,value", {f}, poles, cfg.plot);
}

CurveData wavefunction_csv(const RunConfig& cfg) {
  std::vector<std::function<double(double)>> fns;
  std::vector<double> poles;
  std::string header = "w";
  for (int n = 0; n < cfg.levels; ++n) {
    header += ",phi_" + std::to_string(n);
    if (cfg.model == 1) {
      const auto spec = spectra::wavefn_model1(n, model1_params(cfg), cfg.k);
      fns.emplace_back([spec](double w) { return spec(w); });
    } else {
      const auto p = model2_params(cfg);
      const auto spec = spectra::wavefn_model2(n, p.alpha, p.beta, cfg.polynomial);
      for (double w0 : spec.poles()) {
        if (std::find(poles.begin(), poles.end(), w0) == poles.end()) poles.push_back(w0);
      }
      fns.emplace_back([spec](double w) { return spec(w); });
    }
  }
  return tabulate(header, fns, poles, cfg.plot);
}

std::string report_json(const oracle::VerificationReport& report) {
  auto finite_or_null = [](double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(); };
  ordered_json j;
  j["model"] = report.model;
  j["k"] = report.k;
  j["R"] = report.R;
  j["levels"] = report.levels;
  j["grid"] = {{"L", report.grid.L}, {"N", report.grid.N}, {"h", report.grid.h()}};
  j["forced_claims_pass"] = report.forced_claims_pass();
  ordered_json claims = ordered_json::array();
  for (const auto& c : report.claims) {
    ordered_json cj;
    cj["claim_id"] = c.id;
    cj["paper_ref"] = c.paper_ref;
    cj["description"] = c.description;
    cj["metric_name"] = c.metric_name;
    cj["metric"] = finite_or_null(c.metric);
    cj["tolerance"] = c.tolerance;
    cj["verdict"] = oracle::to_string(c.verdict);
    cj["forced"] = c.forced;
    cj["within_tolerance"] = c.within_tolerance;
    cj["grid"] = {{"L", c.grid.L}, {"N", c.grid.N}, {"h", c.grid.h()}};
    if (c.constant) cj["constant"] = finite_or_null(*c.constant);
    ordered_json values = ordered_json::object();
    for (const auto& [name, v] : c.values) values[name] = finite_or_null(v);
    cj["values"] = values;
    claims.push_back(cj);
  }
  j["claims"] = claims;
  return j.dump(2) + "\n";
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirac spectra on a sphere in isothermal coordinates", "dirac_sphere"};
  app.require_subcommand(1, 1);

  Overrides o;
  auto add_common = [&o](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", o.config, "JSON run configuration");
    if (needs_config) c->required();
    sub->add_option("--out", o.out, "output directory (default: $DIRAC_SPHERE_OUT or .)");
  };
  auto add_overrides = [&o](CLI::App* sub) {
    sub->add_option("--k", o.k, "wave number");
    sub->add_option("--levels", o.levels, "number of levels");
    sub->add_option("--grid-L", o.grid_L, "oracle half-width");
    sub->add_option("--grid-N", o.grid_N, "oracle interior points");
    sub->add_flag("--strict", o.strict, "exit 3 when a forced claim fails");
  };

  auto* spectrum = app.add_subcommand("spectrum", "closed-form energy table");
  auto* potential = app.add_subcommand("potential", "gauge field or effective potential curve");
  auto* wavefunction = app.add_subcommand("wavefunction", "closed-form eigenfunction samples");
  auto* verify = app.add_subcommand("verify", "consistency report against the numerical oracle");
  auto* figures = app.add_subcommand("figures", "data behind the two figures");
  for (auto* sub : {spectrum, potential, wavefunction, verify}) {
    add_common(sub, true);
    add_overrides(sub);
  }
  add_common(figures, false);
  figures->add_option("--k", o.k, "wave number for the curves");
  figures->add_option("--levels", o.levels, "number of spectrum rows");
  potential->add_option("--which", o.which, "A_u, Veff1 or Veff2")->required();
  figures->add_option("--which", o.which, "fig1 or fig2")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  o.k_opt = sub->get_option_no_throw("--k");
  o.levels_opt = sub->get_option_no_throw("--levels");
  o.L_opt = sub->get_option_no_throw("--grid-L");
  o.N_opt = sub->get_option_no_throw("--grid-N");

  Writer writer{out, {}};
  try {
    if (sub == figures) {
      RunConfig base;
      if (!o.config.empty()) base = load_config(o.config);
      return cmd_figures(o.which, o, output_dir(base, o.out), writer);
    }
    RunConfig cfg = load_config(o.config);
    apply_overrides(cfg, o);
    if (sub == potential) curve_from_string(o.which);
    const fs::path dir = output_dir(cfg, o.out);
    if (sub == spectrum) return cmd_spectrum(cfg, dir, writer);
    if (sub == potential) return cmd_potential(cfg, dir, o.which, writer);
    if (sub == wavefunction) return cmd_wavefunction(cfg, dir, writer);
    return cmd_verify(cfg, dir, writer);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "non-physical construction: " << e.what() << '\n';
    return kNonPhysical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace dirac_sphere::cli
