// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: property suites, Bethe roots, wave-function tables
// and Hall-Littlewood values. All output is JSON (or CSV for tables).

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hecke_bose/hecke_bose.hpp"
#include "report_json.hpp"

namespace {

using namespace hecke_bose;
using cli::Json;

constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;
constexpr int kExitContinuation = 3;

struct CommonOptions {
  int k = 2;
  int L = 2;
  std::string alpha = "0";
  std::string beta = "1";
  int window = 2;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";

  Params params() const { return Params(k, L, parse_rational(alpha), parse_rational(beta)); }
};

void add_common(CLI::App* app, CommonOptions& o, bool with_seed) {
  app->add_option("--k", o.k, "particle number (>= 2)")->capture_default_str();
  app->add_option("--L", o.L, "system size (>= 1)")->capture_default_str();
  app->add_option("--alpha", o.alpha, "coupling alpha, as a or a/b")->capture_default_str();
  app->add_option("--beta", o.beta, "coupling beta != 0, as a or a/b")->capture_default_str();
  app->add_option("--window", o.window, "check points with |x_j| <= window")->capture_default_str();
  if (with_seed) app->add_option("--seed", o.seed, "seed for random test data")->capture_default_str();
  app->add_option("--out", o.out, "write output here instead of stdout");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

void emit(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw std::runtime_error("cannot open output file " + o.out);
  file << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list: " + s);
    out.push_back(item);
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& item : split_list(s)) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("malformed integer: " + item);
    out.push_back(v);
  }
  return out;
}

int run_verify(const std::string& suite, const CommonOptions& o, [[maybe_unused]] int corrupt_d_plus) {
  if (!is_suite_name(suite)) throw CLI::ValidationError("suite", "unknown suite " + suite);
#ifdef HECKE_BOSE_TEST_HOOKS
  test_hooks::d_plus_offset = corrupt_d_plus;
#endif
  const Report r = run_suite(suite, o.params(), o.window, o.seed);
  emit(o, cli::report_json(r).dump(2) + "\n");
  return r.passed() ? 0 : kExitFailures;
}

struct WaveDefects {
  double eigenfunction = 0.0;
  double pi_invariance = 0.0;
};

WaveDefects wave_defects(const ComplexParams& cp, const std::vector<Complex>& p, int window) {
  const auto h = bethe_wave_function(cp, p);
  const Complex lambda = std::accumulate(p.begin(), p.end(), Complex(0.0));
  const auto pi = AffineWeylElement::pi(cp.sys);
  WaveDefects d;
  for (const auto& x : window_points(cp.k(), window)) {
    const Complex hx = h(x);
    const double scale = 1.0 + std::abs(hx);
    d.eigenfunction = std::max(d.eigenfunction, std::abs(apply_H(h, x, cp) - lambda * hx) / scale);
    d.pi_invariance = std::max(d.pi_invariance, std::abs(h(act(cp.sys, pi, x)) - hx) / scale);
  }
  return d;
}

/// Max relative defect of h_p = Delta(p) R_eps(x)(1/p; beta) over dominant window points (alpha = 0 only).
double hl_defect(const ComplexParams& cp, const std::vector<Complex>& p, int window) {
  std::vector<Complex> inv;
  Complex vandermonde = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    inv.push_back(1.0 / p[i]);
    for (std::size_t j = i + 1; j < p.size(); ++j) vandermonde *= p[i] - p[j];
  }
  double worst = 0.0;
  for (const auto& x : window_points(cp.k(), window)) {
    if (!is_dominant(cp.sys, x)) continue;
    const Complex lhs = bethe_chamber_formula<Complex>(cp, p, x);
    const auto e = x.to_vector();
    const Complex rhs = vandermonde * hall_littlewood_R<Complex>(e, inv, cp.beta);
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return worst;
}

int run_bethe(const CommonOptions& o, const std::string& seeds_text, int steps) {
  const Params params = o.params();
  std::vector<int> seeds;
  if (seeds_text.empty()) {
    for (int i = 0; i < params.k(); ++i) seeds.push_back(i);
  } else {
    seeds = parse_ints(seeds_text);
  }
  Json j{{"schema", cli::kSchemaVersion}, {"command", "bethe"}, {"params", cli::params_json(params)},
         {"seeds", seeds},           {"steps", steps}};
  SpectralPoint sp;
  try {
    sp = solve_bethe(params, seeds, steps);
  } catch (const ContinuationError& e) {
    j["error"] = Json{{"kind", ContinuationError::kind_name(e.kind())}, {"s", e.s()}, {"message", e.what()}};
    emit(o, j.dump(2) + "\n");
    return kExitContinuation;
  }
  const auto cp = convert_params<Complex>(params);
  Json roots = Json::array();
  for (const auto& z : sp.p) roots.push_back(cli::complex_json(z));
  const WaveDefects d = wave_defects(cp, sp.p, o.window);
  j["roots"] = roots;
  j["residual"] = sp.residual;
  j["eigenvalue"] = cli::complex_json(sp.eigenvalue());
  j["window"] = o.window;
  j["eigenfunction_defect"] = d.eigenfunction;
  j["pi_invariance_defect"] = d.pi_invariance;
  if (sgn(params.alpha) == 0) j["hl_identity_defect"] = hl_defect(cp, sp.p, o.window);
  emit(o, j.dump(2) + "\n");
  return 0;
}

std::string csv_header(int k, bool complex_values) {
  std::string s;
  for (int i = 1; i <= k; ++i) s += "x" + std::to_string(i) + ",";
  return s + (complex_values ? "re,im\n" : "value\n");
}

std::string csv_point(const LatticePoint& x) {
  std::string s;
  for (int c : x.coords()) s += std::to_string(c) + ",";
  return s;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int run_wavefunction(const CommonOptions& o, const std::string& p_text, const std::string& roots_file) {
  const Params params = o.params();
  const auto pts = window_points(params.k(), o.window);
  const bool csv = o.format == "csv";
  if (p_text.empty() == roots_file.empty()) throw CLI::ValidationError("wavefunction", "give exactly one of --p or --roots-file");

  if (!p_text.empty()) {
    const auto p = parse_rationals(p_text);
    if (static_cast<int>(p.size()) != params.k()) throw CLI::ValidationError("--p", "need k values");
    for (const auto& q : p)
      if (sgn(q) == 0) throw CLI::ValidationError("--p", "spectral parameters must be nonzero");
    const auto h = bethe_wave_function(params, p);
    if (csv) {
      std::string text = csv_header(params.k(), false);
      for (const auto& x : pts) text += csv_point(x) + to_string(h(x)) + "\n";
      emit(o, text);
    } else {
      Json rows = Json::array();
      for (const auto& x : pts) rows.push_back(Json{{"x", cli::point_json(x)}, {"value", to_string(h(x))}});
      Json p_json = Json::array();
      for (const auto& q : p) p_json.push_back(to_string(q));
      emit(o, Json{{"schema", cli::kSchemaVersion},
                   {"command", "wavefunction"},
                   {"params", cli::params_json(params)},
                   {"p", p_json},
                   {"window", o.window},
                   {"rows", rows}}
                      .dump(2) +
                  "\n");
    }
    return 0;
  }

  std::ifstream in(roots_file);
  if (!in) throw CLI::ValidationError("--roots-file", "cannot open " + roots_file);
  const auto p = cli::roots_from_json(Json::parse(in));
  if (static_cast<int>(p.size()) != params.k()) throw CLI::ValidationError("--roots-file", "need k roots");
  const auto cp = convert_params<Complex>(params);
  const auto h = bethe_wave_function(cp, p);
  if (csv) {
    std::string text = csv_header(params.k(), true);
    for (const auto& x : pts) {
      const Complex v = h(x);
      text += csv_point(x) + format_double(v.real()) + "," + format_double(v.imag()) + "\n";
    }
    emit(o, text);
  } else {
    Json rows = Json::array();
    for (const auto& x : pts) rows.push_back(Json{{"x", cli::point_json(x)}, {"value", cli::complex_json(h(x))}});
    Json p_json = Json::array();
    for (const auto& z : p) p_json.push_back(cli::complex_json(z));
    emit(o, Json{{"schema", cli::kSchemaVersion},
                 {"command", "wavefunction"},
                 {"params", cli::params_json(params)},
                 {"p", p_json},
                 {"window", o.window},
                 {"rows", rows}}
                    .dump(2) +
                "\n");
  }
  return 0;
}

int run_hall_littlewood(const CommonOptions& o, const std::string& lambda_text, const std::string& z_text,
                        const std::string& t_text) {
  const Partition lambda(parse_ints(lambda_text));
  const auto z = parse_rationals(z_text);
  const Rational t = parse_rational(t_text);
  const int n = static_cast<int>(z.size());
  const Rational r = hall_littlewood_R<Rational>(lambda, z, t);
  const Rational v = v_lambda(lambda, n, t);
  Json z_json = Json::array();
  for (const auto& q : z) z_json.push_back(to_string(q));
  emit(o, Json{{"schema", cli::kSchemaVersion},
               {"command", "hall-littlewood"},
               {"lambda", lambda.padded(n)},
               {"z", z_json},
               {"t", to_string(t)},
               {"R", to_string(r)},
               {"v", to_string(v)},
               {"P", sgn(v) == 0 ? Json(nullptr) : Json(to_string(Rational(r / v)))}}
                  .dump(2) +
              "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete periodic delta Bose gas: Hecke operators, propagation and Bethe wave functions"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  std::string suite;
  int corrupt_d_plus = 0;
  auto* verify = app.add_subcommand("verify", "run a property suite; exit status 0 iff no failures");
  verify->add_option("suite", suite, "hecke | duality | d-change | w-invariance | lemma-main | theorem | hl-identity")
      ->required();
  add_common(verify, verify_opts, true);
#ifdef HECKE_BOSE_TEST_HOOKS
  verify->add_option("--corrupt-d-plus", corrupt_d_plus)->group("");
#endif

  CommonOptions bethe_opts;
  bethe_opts.window = 4;
  std::string seeds;
  int steps = 64;
  auto* bethe = app.add_subcommand("bethe", "continue roots of unity to a Bethe root and check its wave function");
  add_common(bethe, bethe_opts, false);
  bethe->add_option("--seeds", seeds, "comma-separated n_j selecting exp(2 pi i n_j / L); default 0,1,...,k-1");
  bethe->add_option("--steps", steps, "initial homotopy steps")->capture_default_str();

  CommonOptions wave_opts;
  std::string p_text, roots_file;
  auto* wave = app.add_subcommand("wavefunction", "tabulate h_p over the window");
  add_common(wave, wave_opts, false);
  wave->add_option("--p", p_text, "comma-separated exact rationals p_1,...,p_k");
  wave->add_option("--roots-file", roots_file, "JSON output of the bethe command");

  CommonOptions hl_opts;
  std::string lambda_text, z_text, t_text = "0";
  auto* hl = app.add_subcommand("hall-littlewood", "evaluate R_lambda, v_lambda and P_lambda exactly");
  add_common(hl, hl_opts, false);
  hl->add_option("--lambda", lambda_text, "partition, comma-separated")->required();
  hl->add_option("--z", z_text, "comma-separated distinct rationals")->required();
  hl->add_option("--t", t_text, "parameter t")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return run_verify(suite, verify_opts, corrupt_d_plus);
    if (*bethe) return run_bethe(bethe_opts, seeds, steps);
    if (*wave) return run_wavefunction(wave_opts, p_text, roots_file);
    if (*hl) return run_hall_littlewood(hl_opts, lambda_text, z_text, t_text);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return kExitUsage;
}
