#include "xgeom/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "xgeom/dynamics.hpp"
#include "xgeom/geometry.hpp"

namespace xgeom::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Accepts plain decimals and simple fractions such as "-1/3".
double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used == text.size()) return v;
    } else {
      const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
      std::size_t ua = 0, ub = 0;
      const double num = std::stod(a, &ua), den = std::stod(b, &ub);
      if (ua == a.size() && ub == b.size() && den != 0) return num / den;
    }
  } catch (const std::logic_error&) {
  }
  throw InputError("not a number: '" + text + "'");
}

json::const_reference field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

double number_field_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number_field(obj, key) : fallback;
}

int index_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::array<double, 4> quad_field(const json& obj, const char* key) {
  const auto& v = field(obj, key);
  if (!v.is_array() || v.size() != 4) throw InputError(std::string("field '") + key + "' must hold 4 numbers");
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    if (!v[i].is_number()) throw InputError(std::string("field '") + key + "' must hold 4 numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

Matrix4cd matrix_field(const json& doc) {
  const auto& rows = field(doc, "matrix");
  if (!rows.is_array() || rows.size() != 4) throw InputError("'matrix' must have 4 rows");
  Matrix4cd m;
  for (int k = 0; k < 4; ++k) {
    if (!rows[k].is_array() || rows[k].size() != 4) throw InputError("'matrix' rows must have 4 entries");
    for (int j = 0; j < 4; ++j) {
      const auto& e = rows[k][j];
      if (e.is_number()) {
        m(k, j) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(k, j) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw InputError("matrix entries must be [re, im]");
      }
    }
  }
  return m;
}

XState family_state(const std::string& family, const json& p) {
  if (family == "werner") return make_werner(index_field(p, "k"), number_field(p, "q"));
  if (family == "bell_mixture") return make_bell_mixture(quad_field(p, "b"));
  if (family == "generalized_werner") return make_generalized_werner(quad_field(p, "q_vec"), number_field(p, "s"));
  if (family == "x_state")
    return make_x_state(quad_field(p, "populations"), number_field(p, "x"), number_field_or(p, "theta", 0.0),
                        number_field(p, "y"), number_field_or(p, "phi", 0.0));
  throw InputError("unknown family '" + family + "'");
}

json read_document(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw InputError("cannot read '" + path + "'");
    in = &file;
  }
  try {
    return json::parse(*in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

json point_json(SPoint p) { return {{"x", p.x}, {"y", p.y}}; }

json corners(double w, double h) { return json::array({{0.0, 0.0}, {w, 0.0}, {w, h}, {0.0, h}}); }

json region_json(const TrianglePoint& tp, const RegionClass& rc) {
  json out;
  out["point"] = point_json(tp.p);
  out["extremes"] = {{"x0", tp.e.x0}, {"y0", tp.e.y0}};
  out["region"] = std::string(to_string(rc.region));
  out["subregion"] = std::string(to_string(rc.subregion));
  out["predicted_rank"] = rc.predicted_rank ? json(*rc.predicted_rank) : json(nullptr);
  out["closest_separable"] = point_json(closest_separable_point(tp.p, tp.e));
  out["L"] = l_measure(tp.p, tp.e);
  out["l_max"] = l_max(tp.e);
  out["rectangle"] = corners(tp.e.x0, tp.e.y0);
  const double side = std::min(tp.e.x0, tp.e.y0);
  out["separable_square"] = corners(side, side);
  return out;
}

Tolerances tolerances_from(std::optional<double> tol) {
  Tolerances t;
  if (tol) {
    if (!(*tol > 0)) throw ParameterError("--tol must be positive");
    t.hermitian = t.trace = t.psd_floor = t.x_shape = t.geometry = *tol;
  }
  return t;
}

// Output sink: a file when a path is given, otherwise `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }
  bool to_file() const { return file_.is_open(); }
  void finish() {
    stream_->flush();
    if (!*stream_) throw InputError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_row(std::ostream& os, double lead, const MeasureReport& rep, const std::optional<double>& extra) {
  const auto& g = *rep.x;
  os << num(lead) << ',' << num(g.L) << ',' << num(rep.concurrence) << ',' << num(rep.eof) << ','
     << (rep.ppt.entangled ? 1 : 0) << ',' << rep.rank << ',' << num(g.point.p.x) << ',' << num(g.point.p.y) << ','
     << num(g.point.e.x0) << ',' << num(g.point.e.y0) << ',' << to_string(g.region.region) << ','
     << num(rep.subsystem_entropy1);
  if (extra) os << ',' << num(*extra);
  os << '\n';
}

constexpr const char* kRowHeader = "L,C,eof,ppt_entangled,rank,x,y,x0,y0,region,S_sub";

struct Options {
  std::string input = "-";
  std::string output;
  std::string family;
  std::vector<std::string> params;
  std::string from, to, step;
  double gamma = 1.0;
  int photons = 10;
  int bell = 3;
  std::optional<double> tol;
};

std::map<std::string, std::string> split_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

// Grid from..to with the endpoint hit exactly when the step divides the span.
std::vector<double> value_grid(double from, double to, double step) {
  if (!(step > 0) || !(from <= to)) throw ParameterError("sweep range needs from <= to and step > 0");
  const double steps = (to - from) / step;
  const double nearest = std::round(steps);
  const bool exact = std::abs(steps - nearest) <= 1e-9 * std::max(1.0, nearest);
  const std::size_t n = std::size_t(exact ? nearest : std::floor(steps)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = from + double(i) * step;
  if (exact) out.back() = to;
  return out;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances_from(o.tol);
  const json doc = read_document(o.input);
  json rep;
  DensityMatrix rho = [&] {
    try {
      return state_from_json(doc, tol);
    } catch (const InvalidDensity& e) {
      rep["valid"] = false;
      rep["reason"] = to_string(e.reason());
      rep["worst"] = e.worst();
      out << rep.dump(2) << '\n';
      throw;
    }
  }();
  const Matrix4cd& m = rho.matrix();
  rep["valid"] = true;
  rep["purity"] = purity(m);
  rep["rank"] = numerical_rank(m, tol.rank);
  rep["delta"] = compute_delta(rho, tol.geometry).delta;
  try {
    x_state_from_density(rho, tol);
    rep["x_shaped"] = true;
  } catch (const NotXShaped& e) {
    rep["x_shaped"] = false;
    rep["x_shape_violation"] = e.what();
  }
  if (const auto alpha = factorize_pure(rho)) {
    rep["pure"] = true;
    json amps = json::array();
    for (int k = 0; k < 4; ++k) amps.push_back({(*alpha)[k].real(), (*alpha)[k].imag()});
    rep["amplitudes"] = amps;
  } else {
    rep["pure"] = false;
    rep["amplitudes"] = nullptr;
  }
  out << rep.dump(2) << '\n';
  return 0;
}

int cmd_measure(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances_from(o.tol);
  const auto rho = state_from_json(read_document(o.input), tol);
  out << report_to_json(full_report(rho, tol)).dump(2) << '\n';
  return 0;
}

int cmd_region(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances_from(o.tol);
  const auto rho = state_from_json(read_document(o.input), tol);
  const XState s = x_state_from_density(rho, tol);
  out << region_json(to_point(s, tol.geometry), classify(s, tol.geometry)).dump(2) << '\n';
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances_from(o.tol);
  const auto p = split_params(o.params);
  auto get = [&](const std::string& key, std::optional<double> fallback) {
    const auto it = p.find(key);
    if (it != p.end()) return parse_number(it->second);
    if (!fallback) throw InputError("sweep of " + o.family + " needs --param " + key + "=...");
    return *fallback;
  };
  auto get_index = [&](const std::string& key, int fallback) {
    const double v = get(key, fallback);
    if (v != std::floor(v) || v < 1 || v > 4) throw ParameterError(key + " must be an index 1..4");
    return int(v);
  };

  std::function<XState(double)> make;
  if (o.family == "werner") {
    const int k = get_index("k", 1);
    make = [k](double q) { return make_werner(k, q); };
  } else if (o.family == "two_bell") {
    const int k = get_index("k", 1), j = get_index("j", 2);
    if (k == j) throw ParameterError("two_bell needs distinct k and j");
    make = [k, j](double q) {
      std::array<double, 4> b{};
      b[k - 1] = q;
      b[j - 1] = 1.0 - q;
      return make_bell_mixture(b);
    };
  } else if (o.family == "bell_mixture") {
    const double b1 = get("b1", std::nullopt);
    make = [b1](double kappa) { return make_bell_mixture({b1, 1.0 - b1 - 2.0 * kappa, kappa, kappa}); };
  } else if (o.family == "generalized_werner") {
    const int k = get_index("k", 1), j = get_index("j", 2);
    const double s = get("s", std::nullopt);
    if (k == j) throw ParameterError("generalized_werner needs distinct k and j");
    make = [k, j, s](double q) {
      std::array<double, 4> qv{};
      qv[k - 1] = q;
      qv[j - 1] = s - q;
      return make_generalized_werner(qv, s);
    };
  } else {
    throw InputError("unknown sweep family '" + o.family + "' (werner, two_bell, bell_mixture, generalized_werner)");
  }
  if (o.from.empty() || o.to.empty() || o.step.empty()) throw InputError("sweep needs --from, --to and --step");

  const auto grid = value_grid(parse_number(o.from), parse_number(o.to), parse_number(o.step));
  // Build every row before touching the output so a bad point leaves no partial file.
  std::ostringstream rows;
  rows << (o.family == "bell_mixture" ? "kappa," : "q,") << kRowHeader << '\n';
  for (double v : grid) {
    const XState s = make(v);
    write_row(rows, v, full_report(DensityMatrix::validate(s.matrix(), tol), tol), std::nullopt);
  }
  Sink sink(o.output, out);
  sink.get() << rows.str();
  sink.finish();
  return 0;
}

int cmd_dynamics(const Options& o, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances_from(o.tol);
  const CavityParams params{o.gamma, o.photons, o.bell};
  params.validate();
  TimeGrid grid;
  if (!o.from.empty()) grid.t_start = parse_number(o.from);
  if (!o.to.empty()) grid.t_end = parse_number(o.to);
  if (!o.step.empty()) grid.step = parse_number(o.step);
  grid.validate();

  const DynamicsTrace trace = sweep(params, grid);
  std::ostringstream rows;
  rows << "t," << kRowHeader << ",S_envelope\n";
  const bool has_envelope = trace.envelope.values.size() == trace.samples.size();
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const double t = trace.samples[i].t;
    const XState s = rho_2at(params, t);
    const auto rep = full_report(DensityMatrix::validate(s.matrix(), tol), tol);
    write_row(rows, t, rep, has_envelope ? std::optional(trace.envelope.values[i]) : std::optional(std::nan("")));
  }
  Sink sink(o.output, out);
  sink.get() << rows.str();
  sink.finish();

  std::ostream& summary = sink.to_file() ? out : err;
  if (!has_envelope) {
    err << "warning: fewer than 3 samples, no envelope\n";
    return 0;
  }
  if (trace.envelope.degenerate)
    err << "warning: degenerate envelope (" << trace.envelope.minima.size() << " entropy minima)\n";
  const auto l = check_envelope_bound(trace, 1e-6, BoundedQuantity::L);
  const auto e = check_envelope_bound(trace, 1e-6, BoundedQuantity::Eof);
  summary << "envelope bound: L " << (l.holds ? "holds" : "fails") << " (worst " << num(l.worst_violation)
          << " at t=" << num(l.at_t) << "), eof " << (e.holds ? "holds" : "fails") << " (worst "
          << num(e.worst_violation) << " at t=" << num(e.at_t) << "), minima " << trace.envelope.minima.size()
          << '\n';
  return 0;
}

}  // namespace

DensityMatrix state_from_json(const json& doc, const Tolerances& tol) {
  if (!doc.is_object()) throw InputError("state document must be a JSON object");
  if (doc.contains("schema") && (!doc["schema"].is_number_integer() || doc["schema"].get<int>() != 1))
    throw InputError("unsupported schema version");
  if (doc.contains("matrix")) return DensityMatrix::validate(matrix_field(doc), tol);

  const auto& fam = field(doc, "family");
  if (!fam.is_string()) throw InputError("'family' must be a string");
  const std::string family = fam.get<std::string>();
  const json params = doc.contains("params") ? doc.at("params") : json::object();
  if (family == "bell") return make_bell(index_field(params, "k"));
  return DensityMatrix::validate(family_state(family, params).matrix(), tol);
}

json report_to_json(const MeasureReport& rep) {
  json out;
  out["L"] = rep.L();
  out["concurrence"] = rep.concurrence;
  out["eof"] = rep.eof;
  out["ppt_entangled"] = rep.ppt.entangled;
  out["min_pt_eigenvalue"] = rep.ppt.min_eigenvalue;
  out["rank"] = rep.rank;
  out["purity"] = rep.purity;
  out["pure"] = rep.pure;
  out["subsystem_entropy"] = {rep.subsystem_entropy1, rep.subsystem_entropy2};
  out["delta"] = rep.delta;
  if (rep.x) {
    const auto& g = *rep.x;
    json x = region_json(g.point, g.region);
    x["robustness"] = {{"omega0", g.robustness.omega0},
                       {"active_term", g.robustness.active_term},
                       {"active_value", g.robustness.active_value},
                       {"omega_separable", g.robustness.omega_separable}};
    out["x_state"] = x;
  } else {
    out["x_state"] = nullptr;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit X-state entanglement: measures, geometry and cavity dynamics", "xgeom"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "State JSON file ('-' for stdin)")->required();
    sub->add_option("--tol", o.tol, "Validation and geometry tolerance");
  };
  auto* validate = app.add_subcommand("validate", "Check a state and describe it");
  add_input(validate);
  auto* measure = app.add_subcommand("measure", "Full entanglement report as JSON");
  add_input(measure);
  auto* region = app.add_subcommand("region", "Position of an X-state in the triangle S");
  add_input(region);

  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of measures along a state family");
  sweep_cmd->add_option("--family", o.family, "werner | two_bell | bell_mixture | generalized_werner")->required();
  sweep_cmd->add_option("--param", o.params, "Fixed parameter key=value (repeatable)");
  sweep_cmd->add_option("--from", o.from, "First swept value")->required();
  sweep_cmd->add_option("--to", o.to, "Last swept value")->required();
  sweep_cmd->add_option("--step", o.step, "Step of the swept value")->required();
  sweep_cmd->add_option("--output", o.output, "CSV path (stdout when omitted)");
  sweep_cmd->add_option("--tol", o.tol, "Validation and geometry tolerance");

  auto* dyn = app.add_subcommand("dynamics", "CSV of the cavity model over time");
  dyn->add_option("--gamma", o.gamma, "Coupling factor");
  dyn->add_option("--photons", o.photons, "Photons per cavity");
  dyn->add_option("--bell", o.bell, "Initial Bell state 1..4");
  dyn->add_option("--from", o.from, "Start time (default 0)");
  dyn->add_option("--to", o.to, "End time (default 20)");
  dyn->add_option("--step", o.step, "Time step (default 1e-3)");
  dyn->add_option("--output", o.output, "CSV path (stdout when omitted)");
  dyn->add_option("--tol", o.tol, "Validation and geometry tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*measure) return cmd_measure(o, out);
    if (*region) return cmd_region(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
    return cmd_dynamics(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace xgeom::cli
