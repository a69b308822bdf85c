#include "nusf/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace nusf::scenario {

using nlohmann::json;

DensityMatrix4 InitialState::density_matrix() const {
  if (kind == Kind::Pure) return DensityMatrix4::pure(flavour, helicity);
  return DensityMatrix4::diagonal_mixture(weights);
}

void ScenarioConfig::validate() const {
  if (tau_step <= 0) throw std::domain_error("tau_step must be positive");
  if (tau_max <= 0) throw std::domain_error("tau_max must be positive");
  if (tau_max / tau_step > 1e7) throw std::domain_error("tau grid too fine (> 1e7 points)");
  if (initial_state.kind == InitialState::Kind::Diagonal) {
    double sum = 0.0;
    for (double w : initial_state.weights) {
      if (w < -1e-12) throw std::domain_error("initial weights must be >= 0");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::domain_error("initial weights must lie on the probability simplex");
  }
  if (mode == Mode::Dimensionless)
    dimensionless.validate();
  else
    physical.validate();
}

std::vector<double> ScenarioConfig::tau_grid() const {
  const auto n = static_cast<size_t>(std::floor(tau_max / tau_step + 1e-9));
  std::vector<double> grid(n + 1);
  for (size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) * tau_step;
  return grid;
}

DimensionlessParams ScenarioConfig::effective_params() const {
  return mode == Mode::Dimensionless ? dimensionless : to_dimensionless(physical);
}

ScenarioConfig ScenarioConfig::paper_scenario() { return {}; }

UnitReduction reduce_units(const PhysicalParams& p) {
  p.validate();
  if (!p.equal_moments())
    throw std::domain_error("dimensionless reduction requires equal magnetic moments");
  UnitReduction r;
  r.omega_nu_ev = p.delta_m2 / (4.0 * p.e_nu);
  r.mu_b_ev = p.mu12 * p.mu_b * p.b_perp;
  const double l0 = p.l0_pc * constants::parsec_in_inverse_ev;
  r.w_squared_ev = 2.0 * p.eta * r.mu_b_ev * r.mu_b_ev * l0;
  if (r.w_squared_ev <= 0)
    throw std::domain_error("w^2 vanishes: dimensionless time undefined "
                            "(run in dimensionless mode instead)");
  const double two_w2 = 2.0 * r.w_squared_ev;
  r.params.omega_v_bar = r.omega_nu_ev / two_w2;
  r.params.omega_b_bar = 2.0 * r.mu_b_ev / two_w2;
  r.params.beta = constants::pi / 4;
  r.params.theta_nu = p.theta_nu;
  r.params.equal_moments = true;
  return r;
}

DimensionlessParams to_dimensionless(const PhysicalParams& p) { return reduce_units(p).params; }

// ---------------------------------------------------------------------------
// JSON configuration

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) { ok = true; break; }
    if (!ok) config_error("unknown key '" + it.key() + "' in " + where);
  }
}

double get_num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) config_error(std::string(key) + " must be a number");
  return obj[key].get<double>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) config_error(std::string(key) + " must be a boolean");
  return obj[key].get<bool>();
}

DimensionlessParams parse_dimensionless(const json& obj) {
  reject_unknown(obj, {"omega_v_bar", "omega_b_bar", "beta", "theta_nu", "equal_moments"},
                 "dimensionless");
  DimensionlessParams p;
  p.omega_v_bar = get_num(obj, "omega_v_bar", p.omega_v_bar);
  p.omega_b_bar = get_num(obj, "omega_b_bar", p.omega_b_bar);
  p.beta = get_num(obj, "beta", p.beta);
  p.theta_nu = get_num(obj, "theta_nu", p.theta_nu);
  p.equal_moments = get_bool(obj, "equal_moments", p.equal_moments);
  return p;
}

PhysicalParams parse_physical(const json& obj) {
  reject_unknown(obj,
                 {"delta_m2", "e_nu", "theta_nu", "b_perp", "b_par", "mu11", "mu22", "mu12",
                  "gamma1", "gamma2", "n_e", "n_n", "g_f", "eta", "l0_pc", "mu_b"},
                 "physical");
  PhysicalParams p;
  p.delta_m2 = get_num(obj, "delta_m2", p.delta_m2);
  p.e_nu = get_num(obj, "e_nu", p.e_nu);
  p.theta_nu = get_num(obj, "theta_nu", p.theta_nu);
  p.b_perp = get_num(obj, "b_perp", p.b_perp);
  p.b_par = get_num(obj, "b_par", p.b_par);
  p.mu11 = get_num(obj, "mu11", p.mu11);
  p.mu22 = get_num(obj, "mu22", p.mu22);
  p.mu12 = get_num(obj, "mu12", p.mu12);
  p.gamma1 = get_num(obj, "gamma1", p.gamma1);
  p.gamma2 = get_num(obj, "gamma2", p.gamma2);
  p.n_e = get_num(obj, "n_e", p.n_e);
  p.n_n = get_num(obj, "n_n", p.n_n);
  p.g_f = get_num(obj, "g_f", p.g_f);
  p.eta = get_num(obj, "eta", p.eta);
  p.l0_pc = get_num(obj, "l0_pc", p.l0_pc);
  p.mu_b = get_num(obj, "mu_b", p.mu_b);
  return p;
}

InitialState parse_initial_state(const json& obj) {
  reject_unknown(obj, {"type", "weights", "flavour", "helicity"}, "initial_state");
  if (!obj.contains("type")) config_error("initial_state.type missing");
  const std::string type = obj["type"].get<std::string>();
  InitialState s;
  if (type == "pure") {
    s.kind = InitialState::Kind::Pure;
    const std::string f = obj.value("flavour", "e");
    const std::string h = obj.value("helicity", "R");
    if (f == "e") s.flavour = Flavour::e;
    else if (f == "mu") s.flavour = Flavour::mu;
    else config_error("flavour must be 'e' or 'mu'");
    if (h == "R") s.helicity = Helicity::R;
    else if (h == "L") s.helicity = Helicity::L;
    else config_error("helicity must be 'R' or 'L'");
  } else if (type == "diagonal") {
    s.kind = InitialState::Kind::Diagonal;
    if (!obj.contains("weights") || !obj["weights"].is_array() || obj["weights"].size() != 4)
      config_error("diagonal initial_state needs a 4-element weights array");
    for (int i = 0; i < 4; ++i) s.weights[i] = obj["weights"][i].get<double>();
  } else {
    config_error("initial_state.type must be 'pure' or 'diagonal'");
  }
  return s;
}

entropy::MeasurementSet parse_measurement(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "paper") return entropy::MeasurementSet::paper();
    config_error("measurement_mode string must be 'paper'");
  }
  if (v.is_object()) {
    reject_unknown(v, {"type", "resolution"}, "measurement_mode");
    if (v.value("type", "") != "bloch_grid")
      config_error("measurement_mode.type must be 'bloch_grid'");
    return entropy::MeasurementSet::bloch_grid(v.value("resolution", 64));
  }
  config_error("measurement_mode must be 'paper' or a bloch_grid object");
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("top level must be an object");
  reject_unknown(root,
                 {"mode", "dimensionless", "physical", "tau_max", "tau_step", "initial_state",
                  "measurement_mode", "oracle_check", "output_format"},
                 "top level");
  ScenarioConfig c;
  const std::string mode = root.value("mode", "dimensionless");
  if (mode == "dimensionless") c.mode = Mode::Dimensionless;
  else if (mode == "physical") c.mode = Mode::Physical;
  else config_error("mode must be 'dimensionless' or 'physical'");
  if (root.contains("dimensionless")) c.dimensionless = parse_dimensionless(root["dimensionless"]);
  if (root.contains("physical")) c.physical = parse_physical(root["physical"]);
  c.tau_max = get_num(root, "tau_max", c.tau_max);
  c.tau_step = get_num(root, "tau_step", c.tau_step);
  if (root.contains("initial_state")) c.initial_state = parse_initial_state(root["initial_state"]);
  if (root.contains("measurement_mode")) c.measurement_mode = parse_measurement(root["measurement_mode"]);
  c.oracle_check = get_bool(root, "oracle_check", c.oracle_check);
  const std::string fmt = root.value("output_format", "csv");
  if (fmt == "csv") c.output_format = OutputFormat::Csv;
  else if (fmt == "json") c.output_format = OutputFormat::Json;
  else config_error("output_format must be 'csv' or 'json'");
  c.validate();
  return c;
}

ScenarioConfig ScenarioConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

// ---------------------------------------------------------------------------
// Orchestration

RunResult run(const ScenarioConfig& config) {
  config.validate();
  const DimensionlessParams params = config.effective_params();
  const lindblad::DissipatorSpec dissipator{params.beta};
  const DensityMatrix4 rho0 = config.initial_state.density_matrix();

  RunResult result;
  result.tau = config.tau_grid();
  result.trajectory = lindblad::evolve(rho0, params, dissipator, result.tau);

  // conservation sweep alongside the entropic reports
  const Mat4d x = lindblad::evolution_transform(params);
  std::array<Complex, 4> r0_init{};
  {
    const Mat4 re0 = x * rho0.mat * x.transpose();
    for (int q = 0; q < 4; ++q)
      r0_init[q] = 0.5 * re0.block<2, 2>(2 * (q / 2), 2 * (q % 2)).trace();
  }
  result.reports.reserve(result.tau.size());
  for (size_t i = 0; i < result.tau.size(); ++i) {
    const DensityMatrix4& rho = result.trajectory[i];
    try {
      rho.validate();
    } catch (const std::domain_error& e) {
      throw NumericalInvariantError("tau=" + std::to_string(result.tau[i]) + ": " + e.what());
    }
    const Mat4 re = x * rho.mat * x.transpose();
    for (int q = 0; q < 4; ++q) {
      const Complex r0 = 0.5 * re.block<2, 2>(2 * (q / 2), 2 * (q % 2)).trace();
      const double drift = (q == 1 || q == 2)
                               ? std::abs(std::abs(r0) - std::abs(r0_init[q]))
                               : std::abs(r0 - r0_init[q]);
      if (drift > 1e-12)
        throw NumericalInvariantError("tau=" + std::to_string(result.tau[i]) +
                                      ": quadrant r0 drift " + std::to_string(drift));
    }
    result.reports.push_back(entropy::analyze(rho, result.tau[i], config.measurement_mode));
  }

  if (config.oracle_check) {
    const auto oracle = lindblad::evolve_oracle(rho0, params, dissipator, result.tau);
    double dev = 0.0;
    for (size_t i = 0; i < oracle.size(); ++i)
      dev = std::max(dev, (oracle[i].mat - result.trajectory[i].mat).cwiseAbs().maxCoeff());
    result.oracle_max_deviation = dev;
    result.oracle_checked = true;
    if (dev > 1e-6)
      throw NumericalInvariantError("analytic/oracle deviation " + std::to_string(dev));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Output

namespace {

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<double> row_values(const entropy::EntropyReport& r) {
  std::vector<double> v{r.tau};
  for (double x : r.lam) v.push_back(x);
  for (double x : r.lam_r) v.push_back(x);
  for (double x : r.lam_q) v.push_back(x);
  v.insert(v.end(), {r.s_full, r.s_nu, r.s_sigma, r.s_rnu, r.s_qnu, r.s_sigma_given_nu,
                     r.s_r_given_nu, r.s_q_given_nu, r.i_sigma_nu, r.i_sigmaz_nu, r.i_sigmax_nu,
                     r.j_classical, r.d_discord, r.eur_lhs, r.eur_rhs, r.d_eur});
  return v;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "tau", "lam1", "lam2", "lam3", "lam4", "lamR1", "lamR2", "lamR3", "lamR4",
      "lamQ1", "lamQ2", "lamQ3", "lamQ4", "S_full", "S_nu", "S_sigma", "S_Rnu", "S_Qnu",
      "S_sigma_given_nu", "S_R_given_nu", "S_Q_given_nu", "I_sigma_nu", "I_sigmaz_nu",
      "I_sigmax_nu", "J_classical", "D_discord", "eur_lhs", "eur_rhs", "d_eur"};
  return cols;
}

void write_timeseries(const std::vector<entropy::EntropyReport>& reports, std::ostream& os,
                      OutputFormat format) {
  if (reports.empty()) throw std::invalid_argument("no reports to write");
  const auto& cols = csv_columns();
  if (format == OutputFormat::Csv) {
    for (size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : reports) {
      const auto vals = row_values(r);
      for (size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << fmt12(vals[i]);
      os << "\n";
    }
    return;
  }
  json root;
  root["columns"] = cols;
  auto& rows = root["rows"] = json::array();
  for (const auto& r : reports) rows.push_back(row_values(r));
  os << root.dump(2) << "\n";
}

void write_timeseries(const std::vector<entropy::EntropyReport>& reports,
                      const std::filesystem::path& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_timeseries(reports, out, format);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void figure_datasets(const std::vector<entropy::EntropyReport>& reports,
                     const std::filesystem::path& outdir) {
  if (reports.empty()) throw std::invalid_argument("no reports to write");
  std::filesystem::create_directories(outdir);

  struct Spec {
    const char* file;
    std::vector<std::string> cols;
    std::function<std::vector<double>(const entropy::EntropyReport&)> row;
  };
  const std::vector<Spec> figs{
      {"fig1.csv", {"tau", "lam1", "lam2", "lam3", "lam4"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.lam[0], r.lam[1], r.lam[2], r.lam[3]};
       }},
      {"fig2.csv", {"tau", "lamR1", "lamR2", "lamR3", "lamR4"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.lam_r[0], r.lam_r[1], r.lam_r[2], r.lam_r[3]};
       }},
      {"fig3.csv", {"tau", "lamQ1", "lamQ2", "lamQ3", "lamQ4"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.lam_q[0], r.lam_q[1], r.lam_q[2], r.lam_q[3]};
       }},
      {"fig4.csv", {"tau", "S_full", "S_nu", "S_sigma", "S_Rnu", "S_Qnu"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.s_full, r.s_nu, r.s_sigma, r.s_rnu, r.s_qnu};
       }},
      {"fig5.csv", {"tau", "S_sigma_given_nu", "S_R_given_nu", "S_Q_given_nu"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.s_sigma_given_nu, r.s_r_given_nu, r.s_q_given_nu};
       }},
      {"fig6.csv", {"tau", "I_sigma_nu", "I_sigmaz_nu", "I_sigmax_nu", "J_classical", "D_discord"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.i_sigma_nu, r.i_sigmaz_nu, r.i_sigmax_nu,
                                    r.j_classical, r.d_discord};
       }},
      {"fig7.csv", {"tau", "lhs", "rhs_part1", "rhs_part2", "d_eur"},
       [](const auto& r) {
         return std::vector<double>{r.tau, r.eur_lhs, 1.0 + r.s_sigma_given_nu,
                                    std::max(0.0, r.d_discord - r.j_classical), r.d_eur};
       }},
  };
  for (const auto& f : figs) {
    std::ofstream out(outdir / f.file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + (outdir / f.file).string());
    for (size_t i = 0; i < f.cols.size(); ++i) out << (i ? "," : "") << f.cols[i];
    out << "\n";
    for (const auto& r : reports) {
      const auto vals = f.row(r);
      for (size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << fmt12(vals[i]);
      out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + (outdir / f.file).string());
  }
}

}  // namespace nusf::scenario
