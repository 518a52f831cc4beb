// Command-line front end. Every command prints one deterministic JSON report
// to stdout (no timestamps); series data goes to CSV via --out. Exit codes:
// 0 all checks pass, 1 a check failed, 2 configuration or schema problem,
// 3 a numerical guard tripped.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <latgerbe/checks.hpp>
#include <latgerbe/cocycle.hpp>
#include <latgerbe/common.hpp>
#include <latgerbe/dirac.hpp>
#include <latgerbe/exform.hpp>
#include <latgerbe/fock.hpp>
#include <latgerbe/liegerbe.hpp>

using json = nlohmann::ordered_json;
using namespace latgerbe;

namespace {

vec3 to_vec3(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }
ivec3 to_ivec3(const std::vector<long long>& v) { return {v[0], v[1], v[2]}; }

json complex_json(complexd c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

json ivec_json(const ivec3& v) { return json::array({v[0], v[1], v[2]}); }
json vec_json(const vec3& v) { return json::array({v[0], v[1], v[2]}); }

void parse_mesh(const std::string& text, int& nt, int& np) {
  if (std::sscanf(text.c_str(), "%dx%d", &nt, &np) != 2)
    throw config_error("mesh: expected the form NxM, got '" + text + "'");
}

cocycle::CocycleTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("tensor file: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw config_error("tensor file: " + std::string(e.what()));
  }
  if (!doc.is_array())
    throw config_error("tensor file: expected a JSON array of 27 integers");
  if (doc.size() != 27)
    throw config_error("tensor file: expected 27 entries, found " + std::to_string(doc.size()));
  cocycle::CocycleTensor S;
  for (size_t i = 0; i < 27; ++i) {
    if (!doc[i].is_number_integer())
      throw config_error("tensor file: entry " + std::to_string(i) + " is not an integer");
    S.s[i] = doc[i].get<long long>();
  }
  return S;
}

json check_entry(const std::string& name, bool pass, json value, json expected, json tolerance) {
  return json{{"name", name}, {"pass", pass}, {"value", std::move(value)},
              {"expected", std::move(expected)}, {"tolerance", std::move(tolerance)}};
}

// emits the report and returns the exit code implied by its checks
int emit(json report, const std::string& out_path) {
  bool all_pass = true;
  for (const auto& c : report["checks"])
    if (!c["pass"].get<bool>()) all_pass = false;
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw config_error("cannot write report to '" + out_path + "'");
    out << text;
  }
  return all_pass ? 0 : 1;
}

json dd_json(const cocycle::DDReport& rep) {
  json j;
  j["raw"] = rational_to_string(rep.raw);
  if (rep.class_int)
    j["class_int"] = *rep.class_int;
  else
    j["class_int"] = nullptr;
  j["calibration"] = rep.calibration;
  return j;
}

int run_cocycle_classify(const std::string& tensor_path, uint64_t seed, int trials,
                         const std::string& out) {
  auto S = load_tensor(tensor_path);
  auto C = cocycle::tensor_cocycle(S);
  auto identity = cocycle::check_cocycle(C, trials, seed);
  auto rep = cocycle::dd_class(C);

  json report;
  report["command"] = "cocycle classify";
  report["config"] = {{"tensor", tensor_path}, {"seed", seed}, {"trials", trials}};
  report["results"] = dd_json(rep);
  report["checks"] = json::array(
      {check_entry("cocycle identity", identity.ok, identity.max_deviation, 0.0, 1e-12),
       check_entry("integer class", rep.class_int.has_value(), rational_to_string(rep.raw),
                   "integer", "exact")});
  return emit(report, out);
}

int run_cocycle_check(const std::string& tensor_path, uint64_t seed, int trials,
                      const std::string& out) {
  auto S = load_tensor(tensor_path);
  auto identity = cocycle::check_cocycle(cocycle::tensor_cocycle(S), trials, seed);
  json report;
  report["command"] = "cocycle check";
  report["config"] = {{"tensor", tensor_path}, {"seed", seed}, {"trials", trials}};
  report["results"] = {{"max_deviation", identity.max_deviation}};
  report["checks"] = json::array(
      {check_entry("cocycle identity", identity.ok, identity.max_deviation, 0.0, 1e-12)});
  return emit(report, out);
}

// identity spot check that skips draws the truncated basis cannot hold
template <typename Cocycle>
std::pair<double, int> sampled_identity(const Cocycle& C, uint64_t seed, int attempts,
                                        long long arg_range) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ua(0.0, 1.0);
  std::uniform_int_distribution<long long> ui(-arg_range, arg_range);
  double worst = 0;
  int evaluated = 0;
  for (int t = 0; t < attempts; ++t) {
    vec3 a = {ua(rng), ua(rng), ua(rng)};
    ivec3 n = {ui(rng), ui(rng), ui(rng)};
    ivec3 m = {ui(rng), ui(rng), ui(rng)};
    ivec3 pp = {ui(rng), ui(rng), ui(rng)};
    try {
      complexd lhs = C.eval(a, n, m) * C.eval(a, n + m, pp);
      complexd rhs = C.eval(a - n, m, pp) * C.eval(a, n, m + pp);
      worst = std::max(worst, std::abs(lhs - rhs));
      ++evaluated;
    } catch (const truncation_error&) {
      continue;
    }
  }
  return {worst, evaluated};
}

int run_model_rep(const ivec3& p, const ivec3& q, long long cutoff, uint64_t seed,
                  const std::string& out) {
  cocycle::ModelRepParams par;
  par.p = p;
  par.q = q;
  par.n_max = cutoff;
  auto C = cocycle::model_rep_sampled(par);
  auto [worst, evaluated] = sampled_identity(C, seed, 40, 2);
  auto rep = cocycle::dd_class(C);

  json report;
  report["command"] = "cocycle model-rep";
  report["config"] = {{"p", ivec_json(p)}, {"q", ivec_json(q)}, {"cutoff", cutoff}, {"seed", seed}};
  report["results"] = dd_json(rep);
  report["results"]["expected_law"] = "-(p.q)/3";
  report["checks"] = json::array(
      {check_entry("cocycle identity", evaluated >= 13 && worst < 1e-12, worst, 0.0, 1e-12),
       check_entry("class law -(p.q)/3", rep.raw == -rational(dot(p, q)) / 3,
                   rational_to_string(rep.raw), rational_to_string(-rational(dot(p, q)) / 3),
                   "exact")});
  return emit(report, out);
}

int run_fock_extension(const ivec3& alpha, const ivec3& beta, const vec3& a,
                       long long cutoff, long long margin, uint64_t seed,
                       const std::string& out) {
  fock::CutoffConfig cfg{cutoff, margin};
  cfg.validate();
  auto C = fock::fock_cocycle_sampled(alpha, beta, cfg);

  // full phase table over shift pairs with entries in {-1,0,1}; pairs the
  // cutoff cannot hold report a null phase instead of aborting the run
  auto cube = [] {
    std::vector<ivec3> v;
    for (long long i = -1; i <= 1; ++i)
      for (long long j = -1; j <= 1; ++j)
        for (long long k = -1; k <= 1; ++k) v.push_back({i, j, k});
    return v;
  }();
  json table = json::array();
  for (const ivec3& n : cube)
    for (const ivec3& m : cube) {
      json entry = {{"n", ivec_json(n)}, {"m", ivec_json(m)}};
      try {
        entry["phase"] = complex_json(C.eval(a, n, m));
      } catch (const truncation_error&) {
        entry["phase"] = nullptr;
      }
      table.push_back(std::move(entry));
    }

  json covariance = json::array();
  for (int i = 0; i < 3; ++i) {
    ivec3 n{};
    n[i] = 1;
    json entry = {{"n", ivec_json(n)}};
    try {
      entry["deviation"] = fock::check_covariance(a, n, alpha, beta, cfg);
    } catch (const truncation_error&) {
      entry["deviation"] = nullptr;
    }
    covariance.push_back(std::move(entry));
  }

  auto [worst, evaluated] = sampled_identity(C, seed, 40, 1);

  auto rep = cocycle::dd_class(C);

  json report;
  report["command"] = "fock extension";
  report["config"] = {{"alpha", ivec_json(alpha)}, {"beta", ivec_json(beta)},
                      {"a", vec_json(a)}, {"cutoff", cutoff}, {"margin", margin}, {"seed", seed}};
  report["results"] = {{"class", dd_json(rep)},
                       {"expected_law", "-(alpha.beta)/3"},
                       {"phase_table", table},
                       {"covariance_deviations", covariance}};
  report["checks"] = json::array(
      {check_entry("cocycle identity", evaluated >= 13 && worst < 1e-12, worst, 0.0, 1e-12),
       check_entry("class law -(alpha.beta)/3", rep.raw == -rational(dot(alpha, beta)) / 3,
                   rational_to_string(rep.raw),
                   rational_to_string(-rational(dot(alpha, beta)) / 3), "exact")});
  return emit(report, out);
}

int run_spectral_flow(const vec3& from, const vec3& to, double level, int samples,
                      const std::string& out) {
  auto line = [&](int count) {
    std::vector<vec3> path;
    for (int i = 0; i <= count; ++i) {
      double t = double(i) / count;
      path.push_back(from + t * (to - from));
    }
    return path;
  };
  ivec3 flow = dirac::spectral_flow_1d(line(samples), level);
  ivec3 refined = dirac::spectral_flow_1d(line(5 * samples), level);

  json report;
  report["command"] = "dirac spectral-flow";
  report["config"] = {{"from", vec_json(from)}, {"to", vec_json(to)},
                      {"level", level}, {"samples", samples}};
  report["results"] = {{"flow", ivec_json(flow)}};
  report["checks"] = json::array({check_entry("resolution independence", flow == refined,
                                              ivec_json(refined), ivec_json(flow), "exact")});
  return emit(report, out);
}

int run_cond_trace(long long n, long long m, long long cutoff, const std::string& out) {
  auto t = dirac::conditional_trace_1d(n, m, cutoff);
  auto wider = dirac::conditional_trace_1d(n, m, cutoff + 7);
  long long expected = (n + m == 0) ? m : 0;

  json report;
  report["command"] = "dirac cond-trace";
  report["config"] = {{"n", n}, {"m", m}, {"cutoff", cutoff}};
  report["results"] = {{"value", t.value}, {"raw_conditional_trace", t.raw}};
  report["checks"] = json::array(
      {check_entry("winding value m*delta(n+m)", t.value == expected, t.value, expected, "exact"),
       check_entry("cutoff independence", wider.value == t.value, wider.value, t.value, "exact")});
  return emit(report, out);
}

int run_monopole(const vec3& b, double delta, const std::string& out) {
  auto exact = dirac::monopole_curvature(b);
  auto numeric = dirac::berry_curvature_numeric(b, delta);
  double scale = 0, dev = 0;
  json closed = json::array(), plaquette = json::array();
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      scale = std::max(scale, std::abs(exact.omega[j][k]));
      dev = std::max(dev, std::abs(numeric.omega[j][k] - exact.omega[j][k]));
      closed.push_back(json{{"jk", std::to_string(j + 1) + std::to_string(k + 1)},
                            {"omega", complex_json(exact.omega[j][k])}});
      plaquette.push_back(json{{"jk", std::to_string(j + 1) + std::to_string(k + 1)},
                               {"omega", complex_json(numeric.omega[j][k])}});
    }
  double rel = dev / scale;

  json report;
  report["command"] = "dirac monopole";
  report["config"] = {{"b", vec_json(b)}, {"delta", delta}};
  report["results"] = {{"closed_form", closed}, {"plaquette", plaquette}, {"rel_error", rel}};
  report["checks"] =
      json::array({check_entry("plaquette matches closed form", rel < 1e-6, rel, 0.0, 1e-6)});
  return emit(report, out);
}

int run_sphere_chern(const vec3& center, double radius, const std::string& mesh_text,
                     const std::vector<long long>& momentum, long long total_cutoff,
                     const std::string& out) {
  int nt = 50, np = 100;
  if (!mesh_text.empty()) parse_mesh(mesh_text, nt, np);
  dirac::SphereMesh mesh{center, radius, nt, np};
  dirac::SphereMesh refined{center, radius, 2 * nt, 2 * np};

  dirac::FieldKind field;
  json field_desc;
  if (!momentum.empty()) {
    field = dirac::SingleMomentum{to_ivec3(momentum)};
    field_desc = {{"kind", "single-momentum"}, {"p", ivec_json(to_ivec3(momentum))}};
  } else {
    field = dirac::TotalRenormalized{total_cutoff};
    field_desc = {{"kind", "total-renormalized"}, {"cutoff", total_cutoff}};
  }
  long long chern = dirac::sphere_chern(mesh, field);
  long long again = dirac::sphere_chern(refined, field);

  json report;
  report["command"] = "dirac sphere-chern";
  report["config"] = {{"center", vec_json(center)}, {"radius", radius},
                      {"mesh", std::to_string(nt) + "x" + std::to_string(np)},
                      {"field", field_desc}};
  report["results"] = {{"chern", chern}};
  report["checks"] = json::array(
      {check_entry("mesh refinement agrees", chern == again, again, chern, "exact")});
  return emit(report, out);
}

int run_renorm_sum(const vec3& a, std::vector<long long> cutoffs, const std::string& component,
                   const std::string& out) {
  if (component.size() != 2 || component[0] < '1' || component[0] > '3' || component[1] < '1' ||
      component[1] > '3')
    throw config_error("component: expected two digits jk in 1..3, got '" + component + "'");
  int j = component[0] - '1', k = component[1] - '1';
  if (cutoffs.empty()) cutoffs = {6, 8, 10, 12, 14, 16};
  auto s = dirac::renormalized_curvature(a, cutoffs, j, k);

  json series = json::array();
  for (size_t i = 0; i < s.cutoffs.size(); ++i)
    series.push_back(json{{"Lambda", s.cutoffs[i]},
                          {"bare", complex_json(s.bare[i])},
                          {"renorm", complex_json(s.renorm[i])},
                          {"bare_l1", s.bare_abs[i]},
                          {"renorm_l1", s.renorm_abs[i]}});

  bool cauchy = true;
  std::vector<double> inc;
  for (size_t i = 1; i < s.renorm.size(); ++i) inc.push_back(std::abs(s.renorm[i] - s.renorm[i - 1]));
  for (size_t i = 1; i < inc.size(); ++i)
    if (inc[i] >= 0.9 * inc[i - 1]) cauchy = false;

  if (!out.empty()) {
    std::ofstream csv(out);
    if (!csv) throw config_error("cannot write series to '" + out + "'");
    csv << "Lambda,bare_re,bare_im,renorm_re,renorm_im\n";
    for (size_t i = 0; i < s.cutoffs.size(); ++i) {
      char line[256];
      std::snprintf(line, sizeof line, "%lld,%.17g,%.17g,%.17g,%.17g\n", s.cutoffs[i],
                    s.bare[i].real(), s.bare[i].imag(), s.renorm[i].real(), s.renorm[i].imag());
      csv << line;
    }
  }

  json report;
  report["command"] = "dirac renorm-sum";
  report["config"] = {{"a", vec_json(a)}, {"cutoffs", cutoffs}, {"component", component}};
  report["results"] = {{"series", series}};
  if (!out.empty()) report["results"]["csv"] = out;
  report["checks"] = json::array({check_entry("subtracted increments shrink (ratio < 0.9)",
                                              cauchy && inc.size() >= 1,
                                              inc.empty() ? 0.0 : inc.back(), "decreasing", 0.9)});
  return emit(report, "");
}

int run_forms_dd_class(const std::string& expect_text, const std::string& out) {
  using namespace exform;
  IndexFrame idx = make_index_frame();
  Form vol = index_form_volume_exp(idx);
  Form cubed = index_form_volume_cubed(idx);
  Form expected =
      Form::term(&idx.frame, Poly::variable(idx.u) * Poly::variable(idx.u) * Poly::variable(idx.u),
                 {idx.da[0], idx.da[1], idx.da[2]});
  Form expected6 = expected;
  expected6 *= Poly(rational(6));

  json report;
  report["command"] = "forms dd-class";
  report["config"] = json::object();
  if (!expect_text.empty()) report["config"]["expect"] = expect_text;
  report["results"] = {{"volume_exp", to_text(vol)}, {"volume_cubed", to_text(cubed)}};
  report["checks"] = json::array(
      {check_entry("exponential route", vol == expected, to_text(vol), to_text(expected), "exact"),
       check_entry("cubed route", cubed == expected6, to_text(cubed), to_text(expected6),
                   "exact")});
  if (!expect_text.empty()) {
    Form given = from_text(&idx.frame, expect_text);
    report["checks"].push_back(check_entry("matches the given form", vol == given, to_text(vol),
                                           to_text(given), "exact"));
  }
  return emit(report, out);
}

int run_forms_chern_1d(const ivec3& alpha, const ivec3& beta, const std::string& expect_text,
                       const std::string& out) {
  using namespace exform;
  CircleFrame cf = make_circle_frame();
  Form character = circle_character(cf, alpha, beta);
  Form expected(&cf.frame);
  for (int i = 0; i < 3; ++i)
    expected += Form::term(&cf.frame, Poly(rational(alpha[i])) * Poly::variable(cf.u), {cf.da[i]});
  expected += Form::term(
      &cf.frame, Poly(rational(dot(alpha, beta))) * Poly::variable(cf.u) * Poly::variable(cf.u),
      {cf.da[0], cf.da[1], cf.da[2]});

  json report;
  report["command"] = "forms chern-1d";
  report["config"] = {{"alpha", ivec_json(alpha)}, {"beta", ivec_json(beta)}};
  if (!expect_text.empty()) report["config"]["expect"] = expect_text;
  report["results"] = {{"character", to_text(character)}};
  report["checks"] = json::array({check_entry("alpha u + dot(alpha,beta) u^2 volume",
                                              character == expected, to_text(character),
                                              to_text(expected), "exact")});
  if (!expect_text.empty()) {
    Form given = from_text(&cf.frame, expect_text);
    report["checks"].push_back(check_entry("matches the given form", character == given,
                                           to_text(character), to_text(given), "exact"));
  }
  return emit(report, out);
}

int run_forms_gcd(const ivec3& cls, const std::string& out) {
  auto w = exform::gcd_realizability(cls);
  json report;
  report["command"] = "forms gcd-check";
  report["config"] = {{"class", ivec_json(cls)}};
  report["results"] = {{"realizable", w.realizable}};
  bool pairing_ok = true;
  if (w.witness) {
    report["results"]["witness"] = ivec_json(*w.witness);
    pairing_ok = dot(*w.witness, cls) == 1;
  } else {
    report["results"]["witness"] = nullptr;
  }
  report["checks"] = json::array(
      {check_entry("witness pairs to 1 when realizable", pairing_ok,
                   w.witness ? json(dot(*w.witness, cls)) : json(nullptr),
                   w.realizable ? json(1) : json(nullptr), "exact")});
  return emit(report, out);
}

int run_orbit_integral(long long level, const std::string& mesh_text, const std::string& out) {
  int nt = 200, np = 400;
  if (!mesh_text.empty()) parse_mesh(mesh_text, nt, np);
  double value = lie::orbit_integral(level, nt, np);
  double expected = 2.0 * level;
  double rel = level == 0 ? 0.0 : std::abs(value - expected) / std::abs(expected);

  json report;
  report["command"] = "lie orbit-integral";
  report["config"] = json::object();
  report["results"] = {{"level", level},
                       {"mesh", std::to_string(nt) + "x" + std::to_string(np)},
                       {"integral", value},
                       {"expected", expected},
                       {"rel_error", rel}};
  report["checks"] =
      json::array({check_entry("matches twice the level", rel < 1e-3, value, expected, 1e-3)});
  return emit(report, out);
}

int run_verify_all(bool quick, const std::string& out) {
  auto results = checks::run_all(quick);
  json report;
  report["command"] = "verify-all";
  report["config"] = {{"quick", quick}};
  json list = json::array();
  bool all = true;
  for (const auto& r : results) {
    list.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  report["results"] = {{"passed", all}};
  report["checks"] = list;
  // the criterion list already carries pass flags; reuse the emit logic
  std::string text = report.dump(2) + "\n";
  std::cout << text;
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw config_error("cannot write report to '" + out + "'");
    f << text;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice gauge anomaly toolkit"};
  app.require_subcommand(1);

  std::string tensor_path, out_path, mesh_text, expect_text, component = "12";
  uint64_t seed = 1;
  int trials = 50, samples = 16;
  long long cutoff = 0, margin = 2, n_arg = 1, m_arg = -1, level = 1, total_cutoff = 1;
  double level_value = 0.0, delta = 1e-3, radius = 0.4;
  bool quick = false;
  std::vector<double> a_vec = {0.3, 0.4, 0.5}, from_vec = {0.3, 0.4, 0.5}, to_vec, b_vec,
                      center_vec = {0, 0, 0};
  std::vector<long long> p_vec, q_vec, alpha_vec, beta_vec, momentum_vec, cutoffs_vec, class_vec;

  std::function<int()> runner;

  auto* cocycle_cmd = app.add_subcommand("cocycle", "group 2-cocycles and their classes");
  auto* classify = cocycle_cmd->add_subcommand("classify", "integer class of a tensor cocycle");
  classify->add_option("--tensor", tensor_path, "JSON array of 27 integers, row-major (j,k,l)")
      ->required();
  classify->add_option("--seed", seed, "RNG seed for the identity spot check");
  classify->add_option("--trials", trials, "identity spot-check draws");
  classify->add_option("--out", out_path, "also write the report here");
  classify->callback([&] { runner = [&] { return run_cocycle_classify(tensor_path, seed, trials, out_path); }; });

  auto* check = cocycle_cmd->add_subcommand("check", "verify the cocycle identity");
  check->add_option("--tensor", tensor_path, "JSON array of 27 integers")->required();
  check->add_option("--seed", seed, "RNG seed");
  check->add_option("--trials", trials, "number of random draws");
  check->add_option("--out", out_path, "also write the report here");
  check->callback([&] { runner = [&] { return run_cocycle_check(tensor_path, seed, trials, out_path); }; });

  auto* model = cocycle_cmd->add_subcommand("model-rep", "cocycle of the sequence-space model");
  model->add_option("--p", p_vec, "first twist vector")->delimiter(',')->expected(3)->required();
  model->add_option("--q", q_vec, "second twist vector")->delimiter(',')->expected(3)->required();
  model->add_option("--cutoff", cutoff, "index truncation (default 24)");
  model->add_option("--seed", seed, "RNG seed");
  model->add_option("--out", out_path, "also write the report here");
  model->callback([&] {
    runner = [&] {
      return run_model_rep(to_ivec3(p_vec), to_ivec3(q_vec), cutoff ? cutoff : 24, seed, out_path);
    };
  });

  auto* fock_cmd = app.add_subcommand("fock", "second-quantized gauge operators");
  auto* extension = fock_cmd->add_subcommand("extension", "extract the central extension cocycle");
  extension->add_option("--alpha", alpha_vec, "shift exponents")->delimiter(',')->expected(3)->required();
  extension->add_option("--beta", beta_vec, "twist vector")->delimiter(',')->expected(3)->required();
  extension->add_option("--a", a_vec, "evaluation potential (default 0.3,0.4,0.5)")
      ->delimiter(',')
      ->expected(3);
  extension->add_option("--cutoff", cutoff, "momentum cutoff (default 6)");
  extension->add_option("--margin", margin, "interior margin (default 2)");
  extension->add_option("--seed", seed, "RNG seed");
  extension->add_option("--out", out_path, "also write the report here");
  extension->callback([&] {
    runner = [&] {
      return run_fock_extension(to_ivec3(alpha_vec), to_ivec3(beta_vec), to_vec3(a_vec),
                                cutoff ? cutoff : 6, margin, seed, out_path);
    };
  });

  auto* dirac_cmd = app.add_subcommand("dirac", "one-particle spectral computations");
  auto* flow = dirac_cmd->add_subcommand("spectral-flow", "level crossings along a potential path");
  flow->add_option("--from", from_vec, "start potential")->delimiter(',')->expected(3);
  flow->add_option("--to", to_vec, "end potential")->delimiter(',')->expected(3)->required();
  flow->add_option("--level", level_value, "reference level (default 0)");
  flow->add_option("--samples", samples, "path sample count");
  flow->add_option("--out", out_path, "also write the report here");
  flow->callback([&] {
    runner = [&] {
      return run_spectral_flow(to_vec3(from_vec), to_vec3(to_vec), level_value, samples, out_path);
    };
  });

  auto* trace = dirac_cmd->add_subcommand("cond-trace", "conditional trace of X [eps, Y]");
  trace->add_option("--n", n_arg, "first winding")->required();
  trace->add_option("--m", m_arg, "second winding")->required();
  trace->add_option("--cutoff", cutoff, "Fourier cutoff (default 50)");
  trace->add_option("--out", out_path, "also write the report here");
  trace->callback([&] {
    runner = [&] { return run_cond_trace(n_arg, m_arg, cutoff ? cutoff : 50, out_path); };
  });

  auto* monopole = dirac_cmd->add_subcommand("monopole", "closed-form vs plaquette curvature");
  monopole->add_option("--b", b_vec, "evaluation point")->delimiter(',')->expected(3)->required();
  monopole->add_option("--delta", delta, "plaquette size (default 1e-3)");
  monopole->add_option("--out", out_path, "also write the report here");
  monopole->callback([&] { runner = [&] { return run_monopole(to_vec3(b_vec), delta, out_path); }; });

  auto* chern = dirac_cmd->add_subcommand("sphere-chern", "plaquette Chern number on a sphere");
  chern->add_option("--center", center_vec, "sphere center")->delimiter(',')->expected(3);
  chern->add_option("--radius", radius, "sphere radius (default 0.4)");
  chern->add_option("--mesh", mesh_text, "vertex mesh NxM (default 50x100)");
  auto* mom_opt = chern->add_option("--momentum", momentum_vec, "single-momentum band p")
                      ->delimiter(',')
                      ->expected(3);
  chern->add_option("--total-cutoff", total_cutoff, "momentum box for the total bundle")
      ->excludes(mom_opt);
  chern->add_option("--out", out_path, "also write the report here");
  chern->callback([&] {
    runner = [&] {
      return run_sphere_chern(to_vec3(center_vec), radius, mesh_text, momentum_vec, total_cutoff,
                              out_path);
    };
  });

  auto* renorm = dirac_cmd->add_subcommand("renorm-sum", "bare vs subtracted curvature sums");
  renorm->add_option("--a", a_vec, "potential (default 0.3,0.4,0.5)")->delimiter(',')->expected(3);
  renorm->add_option("--cutoffs", cutoffs_vec, "strictly increasing cutoffs (default 6,8,..,16)")
      ->delimiter(',');
  renorm->add_option("--component", component, "form component jk in 1..3 (default 12)");
  renorm->add_option("--out", out_path, "write the series as CSV here");
  renorm->callback([&] {
    runner = [&] { return run_renorm_sum(to_vec3(a_vec), cutoffs_vec, component, out_path); };
  });

  auto* forms_cmd = app.add_subcommand("forms", "exact exterior-algebra computations");
  auto* ddform = forms_cmd->add_subcommand("dd-class", "volume normalization of the index form");
  ddform->add_option("--expect", expect_text, "canonical form text to compare against");
  ddform->add_option("--out", out_path, "also write the report here");
  ddform->callback([&] { runner = [&] { return run_forms_dd_class(expect_text, out_path); }; });

  auto* chern1d = forms_cmd->add_subcommand("chern-1d", "circle-bundle character");
  chern1d->add_option("--alpha", alpha_vec, "winding vector")->delimiter(',')->expected(3)->required();
  chern1d->add_option("--beta", beta_vec, "twist vector")->delimiter(',')->expected(3)->required();
  chern1d->add_option("--expect", expect_text, "canonical form text to compare against");
  chern1d->add_option("--out", out_path, "also write the report here");
  chern1d->callback([&] {
    runner = [&] {
      return run_forms_chern_1d(to_ivec3(alpha_vec), to_ivec3(beta_vec), expect_text, out_path);
    };
  });

  auto* gcd = forms_cmd->add_subcommand("gcd-check", "realizability of a 3-class");
  gcd->add_option("--class", class_vec, "integer class components")
      ->delimiter(',')
      ->expected(3)
      ->required();
  gcd->add_option("--out", out_path, "also write the report here");
  gcd->callback([&] { runner = [&] { return run_forms_gcd(to_ivec3(class_vec), out_path); }; });

  auto* lie_cmd = app.add_subcommand("lie", "orbit quadrature");
  auto* orbit = lie_cmd->add_subcommand("orbit-integral", "pairing of theta with the orbit sphere");
  orbit->add_option("--level", level, "level k")->required();
  orbit->add_option("--mesh", mesh_text, "quadrature mesh NxM (default 200x400)");
  orbit->add_option("--out", out_path, "also write the report here");
  orbit->callback([&] { runner = [&] { return run_orbit_integral(level, mesh_text, out_path); }; });

  auto* verify = app.add_subcommand("verify-all", "run the full acceptance checklist");
  verify->add_flag("--quick", quick, "reduced cutoffs and sample counts");
  verify->add_option("--out", out_path, "also write the report here");
  verify->callback([&] { runner = [&] { return run_verify_all(quick, out_path); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return runner ? runner() : 2;
  } catch (const config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const frame_error& e) {
    std::cerr << "frame error: " << e.what() << "\n";
    return 2;
  } catch (const guard_error& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const truncation_error& e) {
    std::cerr << "truncation guard: " << e.what() << "\n";
    return 3;
  }
}
