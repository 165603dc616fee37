#include "tqd/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tqd {

namespace {

constexpr double kCertifiedProbabilityTol = 1e-24;
constexpr double kSpectrumRelTol = 1e-10;
constexpr double kMonteCarloSigmas = 5.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InputError("invalid number for " + key + ": \"" + v + "\"");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    if (v.empty() || v.front() == '-') throw std::invalid_argument(v);
    std::size_t used = 0;
    const auto n = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw InputError("invalid non-negative integer for " + key + ": \"" + v + "\"");
  }
}

MatrixPerturbation parse_perturbation(const std::string& v) {
  std::stringstream ss(v);
  std::string r, c, d;
  if (!std::getline(ss, r, ',') || !std::getline(ss, c, ',') || !std::getline(ss, d) ) {
    throw InputError("perturb expects ROW,COL,DELTA, got \"" + v + "\"");
  }
  MatrixPerturbation p{parse_uint("perturb row", trim(r)), parse_uint("perturb col", trim(c)),
                       parse_double("perturb delta", trim(d))};
  if (p.row >= 8 || p.col >= 8) throw InputError("perturb indices must be in 0..7");
  return p;
}

double spectrum_tol(double max_e) { return kSpectrumRelTol * std::max(1.0, max_e); }

Json form_json(const LinearForm& f) { return f.to_string(); }

Json degeneracy_json(const DegeneracyReport& r) {
  Json out = Json::array();
  for (const auto& c : r.collisions)
    out.push_back(Json{{"i", c.i}, {"j", c.j}, {"vanishing_form", form_json(c.form)}});
  return out;
}

Json labels_json(const PreparationFamily& f) {
  Json out = Json::array();
  for (const auto& l : f.labels) out.push_back(l[0] + "," + l[1] + "," + l[2]);
  return out;
}

bool all_true(const Json& verdicts) {
  for (const auto& [k, v] : verdicts.items())
    if (!v.get<bool>()) return false;
  return true;
}

Json section(Json result, Json verdicts, Json warnings) {
  return Json{{"result", std::move(result)}, {"verdicts", std::move(verdicts)}, {"warnings", std::move(warnings)}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const std::exception& e) {
      throw InputError(std::string("config file: invalid JSON: ") + e.what());
    }
    for (const auto& [k, v] : j.items()) {
      if (v.is_string()) {
        out[k] = v.get<std::string>();
      } else if (v.is_number_float()) {
        out[k] = format_double(v.get<double>());
      } else if (v.is_number() || v.is_boolean()) {
        out[k] = v.dump();
      } else {
        throw InputError("config file: value of " + k + " must be a scalar");
      }
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config file line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_settings(RunConfig& cfg, const std::map<std::string, std::string>& settings) {
  for (const auto& [key, value] : settings) {
    if (key == "a") {
      cfg.a = parse_double(key, value);
    } else if (key == "b") {
      cfg.b = parse_double(key, value);
    } else if (key == "c") {
      cfg.c = parse_double(key, value);
    } else if (key == "theta") {
      cfg.theta = parse_double(key, value);
    } else if (key == "grid") {
      cfg.grid = parse_uint(key, value);
    } else if (key == "q") {
      cfg.q = parse_double(key, value);
    } else if (key == "samples") {
      cfg.samples = parse_uint(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_uint(key, value);
    } else if (key == "eps") {
      cfg.eps = parse_double(key, value);
    } else if (key == "output") {
      if (value == "json") {
        cfg.output = OutputFormat::json;
      } else if (value == "csv") {
        cfg.output = OutputFormat::csv;
      } else {
        throw InputError("output must be json or csv, got \"" + value + "\"");
      }
    } else if (key == "model") {
      cfg.model_path = value;
    } else if (key == "write-model") {
      cfg.write_model_path = value;
    } else if (key == "out") {
      cfg.out_path = value;
    } else if (key == "perturb") {
      cfg.perturb = parse_perturbation(value);
    } else {
      throw InputError("unknown setting \"" + key + "\"");
    }
  }
}

void validate(const RunConfig& cfg) {
  static const std::vector<std::string> commands{"hamiltonian", "exclusion", "pbr2", "ontic", "all-checks"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    throw InputError("unknown command \"" + cfg.command + "\"");
  }
  for (double v : {cfg.a, cfg.b, cfg.c, cfg.q, cfg.eps})
    if (!std::isfinite(v)) throw InputError("parameters must be finite");
  if (cfg.theta && !(*cfg.theta > 0.0 && *cfg.theta < std::numbers::pi / 2.0)) {
    throw InputError("theta must lie strictly between 0 and pi/2");
  }
  if (cfg.theta && cfg.grid > 0) throw InputError("give either --theta or --grid, not both");
  if (!(cfg.q > 0.0 && cfg.q <= 1.0)) throw InputError("q must lie in (0, 1]");
  if (cfg.samples < 1) throw InputError("samples must be >= 1");
  if (!(cfg.eps > 0.0)) throw InputError("eps must be positive");
  if (cfg.output == OutputFormat::csv && cfg.command != "exclusion") {
    throw InputError("csv output is only available for exclusion");
  }
}

// ---------------------------------------------------------------------------
// Sections

OperatorMatrix printed_matrix_for(const RunConfig& cfg) {
  OperatorMatrix m = explicit_matrix(cfg.a, cfg.b, cfg.c);
  if (cfg.perturb) m.at(cfg.perturb->row, cfg.perturb->col) += cfg.perturb->delta;
  return m;
}

Json hamiltonian_section(double a, double b, double c, const OperatorMatrix& printed) {
  const auto cfg = CouplingConfig::standard(a, b, c);
  Json result, verdicts, warnings = Json::array();

  Json matrix = Json::array();
  for (std::size_t i = 0; i < 8; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < 8; ++j) row.push_back(printed(i, j).real());
    matrix.push_back(std::move(row));
  }
  result["parameters"] = Json{{"a", a}, {"b", b}, {"c", c}};
  result["printed_matrix"] = std::move(matrix);
  result["trace"] = printed.trace().real();

  const auto builder = verify_builder(cfg, printed);
  Json tried = Json::array();
  for (const auto& t : builder.tried) tried.push_back(Json{{"order", to_string(t.order)}, {"residual", t.residual}});
  Json discrepancy = Json::array();
  for (const auto& term : builder.discrepancy)
    discrepancy.push_back(Json{{"term", term.label}, {"coefficient", term.coefficient}});
  result["builder"] = Json{{"spin_scale", kSpinScale},
                           {"residual", builder.residual},
                           {"best_order", to_string(builder.best_order)},
                           {"matched", builder.matched},
                           {"orders_tried", std::move(tried)},
                           {"printed_minus_built", std::move(discrepancy)}};
  verdicts["builder_reproduces_printed_matrix"] = builder.residual <= kBuilderTolerance;

  const double hdefect = printed.hermiticity_defect();
  verdicts["printed_matrix_hermitian"] = hdefect <= kHermitianTolerance;
  const double trace_tol = 1e-12 * std::max(1.0, printed.max_abs());
  verdicts["printed_matrix_traceless"] = std::abs(printed.trace()) <= trace_tol;

  Json audit = Json::array();
  for (const auto& e : audit_eigenvalue_forms()) {
    audit.push_back(Json{{"index", e.index},
                         {"printed", form_json(e.printed)},
                         {"matrix_derived", form_json(e.derived)},
                         {"matches", e.matches()}});
    if (!e.matches()) {
      warnings.push_back("printed E" + std::to_string(e.index) + " = " + e.printed.to_string() +
                         " disagrees with <e" + std::to_string(e.index) + "|H|e" + std::to_string(e.index) +
                         "> = " + e.derived.to_string());
    }
  }
  result["eigenvalue_form_audit"] = std::move(audit);

  if (hdefect > kHermitianTolerance) {
    warnings.push_back("printed matrix is not Hermitian; spectral checks skipped");
    verdicts["printed_eigenvectors_verified"] = false;
    verdicts["printed_eigenvalues_verified"] = false;
    return section(std::move(result), std::move(verdicts), std::move(warnings));
  }
  const auto h = printed.certified_hermitian();
  const auto numeric = hermitian_eigendecomposition(h);
  const double tol = spectrum_tol(numeric.max_abs_eigenvalue());

  Json clusters = Json::array();
  for (const auto& cl : numeric.degeneracy_clusters)
    if (cl.size() > 1) {
      Json vals = Json::array();
      for (auto i : cl) vals.push_back(numeric.pairs[i].value);
      clusters.push_back(std::move(vals));
    }
  result["numeric_spectrum"] = Json{{"eigenvalues", numeric.eigenvalues()},
                                    {"distinct_eigenvalues", numeric.degeneracy_clusters.size()},
                                    {"degenerate_clusters", std::move(clusters)},
                                    {"reconstruction_residual", reconstruction_residual(h, numeric)}};

  // Kets on their own: residual against their Rayleigh quotients.
  double ket_residual = 0.0;
  for (const auto& e : printed_eigenvectors()) {
    const auto he = h.apply(e);
    const double lambda = inner_product(e, he).real();
    for (std::size_t k = 0; k < 8; ++k) ket_residual = std::max(ket_residual, std::abs(he[k] - lambda * e[k]));
  }
  verdicts["printed_eigenvectors_verified"] = ket_residual <= tol;

  Json analytic = Json::object();
  for (auto [name, source] : {std::pair{"printed", FormSource::printed},
                              std::pair{"matrix_derived", FormSource::matrix_derived}}) {
    const auto forms = analytic_spectrum(a, b, c, source);
    std::vector<double> by_label(8);
    for (const auto& p : forms.pairs) by_label[p.label - 1] = p.value;
    const double r_pairs = eigenpair_residual(h, forms);
    const double r_proj = spectral_projector_residual(numeric, forms);
    const auto degen = degeneracy_report(a, b, c, source);
    analytic[name] = Json{{"eigenvalues_in_label_order", by_label},
                          {"eigenpair_residual", r_pairs},
                          {"projector_residual", r_proj},
                          {"degeneracy_threshold", degen.threshold},
                          {"collisions", degeneracy_json(degen)}};
    if (source == FormSource::printed) {
      verdicts["printed_eigenvalues_verified"] = r_pairs <= tol && r_proj <= tol;
    }
    for (const auto& col : degen.collisions) {
      warnings.push_back(std::string(name) + " forms: E" + std::to_string(col.i) + " = E" + std::to_string(col.j) +
                         " (" + col.form.to_string() + " = 0)");
    }
  }
  result["ket_residual"] = ket_residual;
  result["tolerance"] = tol;
  result["analytic_spectrum"] = std::move(analytic);
  return section(std::move(result), std::move(verdicts), std::move(warnings));
}

Json exclusion_section(const std::vector<double>& thetas, bool scan) {
  const auto basis = three_spin_measurement();
  Json result, verdicts, warnings = Json::array();
  ThetaScan sweep;
  try {
    sweep = scan_exclusion(thetas, basis);
  } catch (const NoPerfectMatching& e) {
    Json amps = Json::array();
    for (std::size_t r = 0; r < e.amplitudes().rows; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < e.amplitudes().cols; ++c) row.push_back(std::abs(e.amplitudes()(r, c)));
      amps.push_back(std::move(row));
    }
    result["amplitude_magnitudes"] = std::move(amps);
    verdicts["perfect_matching_exists"] = false;
    return section(std::move(result), std::move(verdicts), std::move(warnings));
  }

  const auto& first = sweep.entries.front();
  double closed_form_error = 0.0;
  for (const auto& e : sweep.entries) {
    const double c = std::cos(e.theta / 2.0), s = std::sin(e.theta / 2.0);
    closed_form_error = std::max(closed_form_error, std::abs(e.identity_pair_2_probability - c * c * s * s * s * s));
  }
  result["preparations"] = labels_json(build_preparations(first.theta));
  result["matching"] = to_json(first.matching);
  result["max_certified_probability"] = sweep.max_certified_probability;
  result["max_row_sum_defect"] = sweep.max_row_sum_defect;

  Json identity_failures = Json::array();
  for (std::size_t i = 0; i < 8; ++i) {
    const double p = first.probabilities(i, i);
    if (p > kCertifiedProbabilityTol) identity_failures.push_back(Json{{"outcome", i + 1}, {"preparation", i + 1}, {"probability", p}});
  }
  result["identity_pairing"] = Json{{"holds", first.matching.is_identity()},
                                    {"failures_at_first_theta", std::move(identity_failures)},
                                    {"e2_psi2_closed_form", "cos^2(theta/2) sin^4(theta/2)"},
                                    {"e2_psi2_closed_form_max_error", closed_form_error}};
  if (!first.matching.is_identity()) {
    warnings.push_back("the identity pairing e_i -> Psi_i is not an exclusion matching");
  }

  if (scan) {
    result["grid_points"] = thetas.size();
    result["matching_stable"] = sweep.matching_stable;
    Json tables = Json::array();
    for (const auto& e : sweep.entries)
      tables.push_back(Json{{"theta", e.theta}, {"probability_table", to_json(e.probabilities)}});
    result["tables"] = std::move(tables);
  } else {
    result["theta"] = first.theta;
    result["probability_table"] = to_json(first.probabilities);
  }
  verdicts["perfect_matching_exists"] = true;
  verdicts["matching_theta_independent"] = sweep.matching_stable;
  verdicts["certified_probabilities_vanish"] = sweep.max_certified_probability <= kCertifiedProbabilityTol;
  verdicts["rows_normalized"] = sweep.max_row_sum_defect <= kNormTolerance;
  return section(std::move(result), std::move(verdicts), std::move(warnings));
}

std::string exclusion_csv(const std::vector<double>& thetas) {
  const auto basis = three_spin_measurement();
  std::string out = "theta,prep_index,outcome_index,probability\n";
  for (double theta : thetas) {
    const auto table = probability_table(build_preparations(theta), basis);
    for (std::size_t r = 0; r < table.rows; ++r)
      for (std::size_t c = 0; c < table.cols; ++c)
        out += format_double(theta) + "," + std::to_string(r + 1) + "," + std::to_string(c + 1) + "," +
               format_double(table(r, c)) + "\n";
  }
  return out;
}

Json pbr2_section() {
  const auto proto = pbr_two_qubit_protocol();
  Json result, verdicts, warnings = Json::array();
  result["preparations"] = Json::array({"0,0", "0,+", "+,0", "+,+"});
  result["outcomes"] = Json::array({"xi1", "xi2", "xi3", "xi4"});
  result["probability_table"] = to_json(proto.probabilities);
  result["matching"] = to_json(proto.matching);
  result["partner_amplitude"] = proto.partner_amplitude;
  result["orthonormality_defect"] = proto.orthonormality_defect;
  result["completeness_defect"] = proto.completeness_defect;
  double row_defect = 0.0;
  for (std::size_t r = 0; r < 4; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < 4; ++c) s += proto.probabilities(r, c);
    row_defect = std::max(row_defect, std::abs(s - 1.0));
  }
  result["max_row_sum_defect"] = row_defect;
  verdicts["printed_partners_excluded"] =
      proto.partner_amplitude * proto.partner_amplitude <= kCertifiedProbabilityTol;
  verdicts["basis_orthonormal"] = proto.orthonormality_defect <= kNormTolerance;
  verdicts["basis_complete"] = proto.completeness_defect <= kNormTolerance;
  verdicts["rows_normalized"] = row_defect <= kNormTolerance;
  return section(std::move(result), std::move(verdicts), std::move(warnings));
}

namespace {

Json model_summary(const OnticModel& model, const Table<double>& quantum, const ExclusionMatching& matching,
                   const RunConfig& cfg, bool& mc_ok) {
  Json masses = Json::array(), weights = Json::array();
  for (std::size_t p = 0; p < model.parties.size(); ++p) {
    masses.push_back(model.overlap_mass(p));
    weights.push_back(model.overlap_weight(p));
  }
  const auto report = consistency_check(model, quantum, matching, cfg.eps);
  Json violations = Json::array();
  for (const auto& v : report.violations)
    violations.push_back(Json{{"preparation", v.preparation}, {"outcome", v.outcome}, {"predicted", v.predicted}});

  Json mc = Json::array();
  for (std::size_t o = 0; o < model.outcomes(); ++o) {
    const std::size_t prep = matching.outcome_to_preparation[o] + 1;
    const double p = model_prediction(model, prep)[o];
    const auto run = monte_carlo_run(model, prep, cfg.samples, cfg.seed);
    const double se = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(cfg.samples));
    const bool ok = std::abs(run.frequencies[o] - p) <= kMonteCarloSigmas * se;
    mc_ok = mc_ok && ok;
    mc.push_back(Json{{"preparation", prep},
                      {"forbidden_outcome", o + 1},
                      {"exhaustive_probability", p},
                      {"frequency", run.frequencies[o]},
                      {"standard_error", se},
                      {"within_5_sigma", ok}});
  }
  return Json{{"overlap_mass", std::move(masses)},
              {"overlap_weight", std::move(weights)},
              {"pigeonhole_bound", pigeonhole_bound(model)},
              {"forbidden_outcome_bound", forbidden_outcome_bound(model, matching)},
              {"consistency", Json{{"eps", cfg.eps},
                                   {"max_deviation", report.max_deviation},
                                   {"passed", report.passed()},
                                   {"violations", std::move(violations)}}},
              {"monte_carlo", std::move(mc)}};
}

}  // namespace

Json ontic_section(const RunConfig& cfg) {
  const double theta = cfg.theta.value_or(std::numbers::pi / 3.0);
  const auto family = build_preparations(theta);
  const auto basis = three_spin_measurement();
  const auto quantum = probability_table(family, basis);
  const auto matching = find_exclusion_matching(family, basis);

  OnticModel overlap;
  if (cfg.model_path) {
    std::ifstream in(*cfg.model_path);
    if (!in) throw InputError("cannot open model file " + *cfg.model_path);
    try {
      overlap = model_from_json(Json::parse(in));
    } catch (const std::exception& e) {
      throw InputError(std::string("model file: ") + e.what());
    }
    if (overlap.parties.size() != 3) throw InputError("model file: the three-spin protocol needs three parties");
  } else {
    overlap = build_overlap_toy_model(cfg.q);
  }
  const auto psi = build_psi_ontic_model(family, basis);

  Json result, verdicts, warnings = Json::array();
  bool mc_ok = true;
  result["theta"] = theta;
  result["q"] = cfg.q;
  result["model_source"] = cfg.model_path ? *cfg.model_path : std::string("overlap toy model");
  result["pigeonhole_prediction_q3_over_8"] = cfg.q * cfg.q * cfg.q / 8.0;
  result["matching"] = to_json(matching);
  auto overlap_json = model_summary(overlap, quantum, matching, cfg, mc_ok);
  auto psi_json = model_summary(psi, quantum, matching, cfg, mc_ok);

  const double bound = overlap_json["forbidden_outcome_bound"].get<double>();
  const double pigeon = overlap_json["pigeonhole_bound"].get<double>();
  const bool overlap_passes = overlap_json["consistency"]["passed"].get<bool>();
  verdicts["overlap_bound_at_least_pigeonhole"] = bound >= pigeon - 1e-12;
  verdicts["overlap_model_refuted_when_bound_exceeds_eps"] = pigeon <= cfg.eps || !overlap_passes;
  bool psi_zero_overlap = true;
  for (const auto& m : psi_json["overlap_mass"]) psi_zero_overlap = psi_zero_overlap && m.get<double>() == 0.0;
  verdicts["psi_ontic_zero_overlap"] = psi_zero_overlap;
  verdicts["psi_ontic_consistent"] = psi_json["consistency"]["passed"].get<bool>();
  verdicts["monte_carlo_within_5_sigma"] = mc_ok;
  if (overlap_passes && pigeon > 0.0) {
    warnings.push_back("overlap model passes at eps = " + format_double(cfg.eps) +
                       " only because eps exceeds its pigeonhole bound");
  }

  result["overlap_model"] = std::move(overlap_json);
  result["psi_ontic_model"] = std::move(psi_json);
  return section(std::move(result), std::move(verdicts), std::move(warnings));
}

// ---------------------------------------------------------------------------
// Dispatch

std::string CommandOutput::render(OutputFormat format) const {
  return format == OutputFormat::csv ? csv : dump_report(report);
}

CommandOutput run_command(const RunConfig& cfg) {
  validate(cfg);
  Json params = Json::object();
  Json sections = Json::object();
  std::string csv;

  auto thetas_for = [&]() -> std::pair<std::vector<double>, bool> {
    if (cfg.grid > 0) return {theta_grid(cfg.grid), true};
    return {{cfg.theta.value_or(std::numbers::pi / 3.0)}, false};
  };
  auto perturbation_json = [&]() {
    return Json{{"row", cfg.perturb->row}, {"col", cfg.perturb->col}, {"delta", cfg.perturb->delta}};
  };

  const bool all = cfg.command == "all-checks";
  if (cfg.command == "hamiltonian" || all) {
    params["a"] = cfg.a;
    params["b"] = cfg.b;
    params["c"] = cfg.c;
    if (cfg.perturb) params["perturb"] = perturbation_json();
    sections["hamiltonian"] = hamiltonian_section(cfg.a, cfg.b, cfg.c, printed_matrix_for(cfg));
  }
  if (cfg.command == "exclusion" || all) {
    auto [thetas, scan] = thetas_for();
    if (all && cfg.grid == 0) {
      thetas = theta_grid(99);
      scan = true;
    }
    if (scan) {
      params["grid"] = thetas.size();
    } else {
      params["theta"] = thetas.front();
    }
    sections["exclusion"] = exclusion_section(thetas, scan);
    if (cfg.output == OutputFormat::csv) csv = exclusion_csv(thetas);
  }
  if (cfg.command == "pbr2" || all) {
    sections["pbr2"] = pbr2_section();
  }
  if (cfg.command == "ontic" || all) {
    params["q"] = cfg.q;
    params["samples"] = cfg.samples;
    params["seed"] = cfg.seed;
    params["eps"] = cfg.eps;
    if (cfg.theta) params["theta"] = *cfg.theta;
    if (cfg.model_path) params["model"] = *cfg.model_path;
    sections["ontic"] = ontic_section(cfg);
  }

  Json result, verdicts = Json::object(), warnings = Json::array();
  if (all) {
    for (const auto& [name, sec] : sections.items()) {
      result[name] = sec["result"];
      for (const auto& [k, v] : sec["verdicts"].items()) verdicts[name + "." + k] = v;
      for (const auto& w : sec["warnings"]) warnings.push_back(name + ": " + w.get<std::string>());
    }
  } else {
    auto& sec = sections.begin().value();
    result = sec["result"];
    verdicts = sec["verdicts"];
    warnings = sec["warnings"];
  }
  const bool pass = all_true(verdicts);
  Json report{{"schema_version", kSchemaVersion},
              {"tool", kToolName},
              {"version", kToolVersion},
              {"command", cfg.command},
              {"parameters", std::move(params)},
              {"result", std::move(result)},
              {"warnings", std::move(warnings)},
              {"verdicts", std::move(verdicts)},
              {"status", pass ? "pass" : "fail"}};
  return CommandOutput{std::move(report), std::move(csv), pass ? kExitPass : kExitClaimFailed};
}

}  // namespace tqd
