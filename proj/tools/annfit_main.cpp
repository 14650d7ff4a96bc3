#include <cctype>
#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "annfit/random_instances.hpp"
#include "annfit/serialize.hpp"
#include "annfit/stickelberger.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace annfit;

constexpr const char* kVersion = "0.1.0";

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Reports go to --out or stdout and are byte-identical for identical
// configs; wall-clock is printed to stderr only, to keep them that way.
void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << dump(j);
  else
    write_text_file(out, dump(j));
}

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long require_prime(long l) {
  if (!is_prime_long(l)) throw BadParameterError("--l must be a prime");
  return l;
}

// "C6", "C2xC2", "4x2": cyclic factors joined by x/X/*.
FiniteAbelianGroup parse_group_desc(const std::string& desc) {
  std::vector<long> orders;
  std::string token;
  auto flush = [&]() {
    std::size_t i = 0;
    if (!token.empty() && (token[0] == 'C' || token[0] == 'c')) i = 1;
    if (i >= token.size())
      throw BadParameterError("group descriptor: want C<n> factors");
    long v = 0;
    for (; i < token.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i])))
        throw BadParameterError("group descriptor: want C<n> factors");
      v = v * 10 + (token[i] - '0');
      if (v > 1000000)
        throw BadParameterError("group descriptor: factor out of range");
    }
    orders.push_back(v);
    token.clear();
  };
  for (char ch : desc) {
    if (ch == 'x' || ch == 'X' || ch == '*')
      flush();
    else if (!std::isspace(static_cast<unsigned char>(ch)))
      token += ch;
  }
  flush();
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

Json group_json(const FiniteAbelianGroup& g) {
  Json a = Json::array();
  for (long d : g.invariant_factors()) a.push_back(d);
  return a;
}

Json coeff_strings(const QG& x) {
  Json a = Json::array();
  for (const Rat& c : x.coeffs()) a.push_back(c.get_str());
  return a;
}

Json factor_list(const ConcreteModule& m) {
  Json a = Json::array();
  for (long e : m.factors()) a.push_back(e);
  return a;
}

Json check_records_json(const std::vector<CheckRecord>& checks) {
  Json arr = Json::array();
  for (const CheckRecord& r : checks) {
    Json c;
    c["direction"] = r.direction;
    c["generator"] = r.generator;
    c["exponent"] = r.exponent;
    c["target"] = r.target;
    c["integral"] = r.integral;
    c["contained"] = r.contained;
    c["pass"] = r.pass();
    arr.push_back(std::move(c));
  }
  return arr;
}

Json witness_json(const AugmentationWitnessReport& w) {
  Json j;
  j["fitting_valuation"] = w.fitting_valuation;
  j["dual_fitting_valuation"] = w.dual_fitting_valuation;
  j["ann_duality_ok"] = w.ann_duality_ok;
  return j;
}

bool witness_pass(const AugmentationWitnessReport& w) {
  return w.fitting_valuation == 2 && w.dual_fitting_valuation == 1 &&
         w.ann_duality_ok;
}

// All products of mu annihilator generators (multisets, non-decreasing
// index tuples) must land in the Fitting ideal.
bool ann_power_in_fitting(const FiniteAbelianGroup& g,
                          const std::vector<ZG>& gens, long mu,
                          const IdealHandle& fit) {
  if (mu == 0) return fit.contains(ZG::scalar(g, Int(1)));
  if (gens.empty()) return true;
  std::vector<long> idx(mu, 0);
  long last = static_cast<long>(gens.size()) - 1;
  while (true) {
    ZG prod = ZG::scalar(g, Int(1));
    for (long i : idx) prod = prod * gens[i];
    if (!fit.contains(prod)) return false;
    long pos = mu - 1;
    while (pos >= 0 && idx[pos] == last) --pos;
    if (pos < 0) return true;
    ++idx[pos];
    for (long j = pos + 1; j < mu; ++j) idx[j] = idx[pos];
  }
}

int run_verify(long l, const std::string& group_desc, long trials,
               std::uint64_t seed, long guard, bool prop28_only,
               const std::string& out) {
  require_prime(l);
  if (trials < 1) throw BadParameterError("--trials must be at least 1");
  FiniteAbelianGroup g = parse_group_desc(group_desc);

  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "verify";
  Json cfg;
  cfg["l"] = l;
  cfg["group"] = group_json(g);
  cfg["trials"] = trials;
  cfg["seed"] = seed;
  cfg["guard"] = guard;
  j["config"] = std::move(cfg);

  bool all_pass = true;

  if (prop28_only) {
    AugmentationWitnessReport w = augmentation_kernel_witness(l, guard);
    j["prop28"] = witness_json(w);
    all_pass = witness_pass(w);
    j["pass"] = all_pass;
    emit(j, out);
    return all_pass ? 0 : 2;
  }

  std::mt19937_64 rng(seed);

  Json cones = Json::array();
  for (long t = 0; t < trials; ++t) {
    ConeSpec spec = random_cone_spec(g, l, rng);
    PerfectComplex c = generate_cone(spec);
    VerificationReport rep = verify_annihilator_theorem(c, 0, guard, rng());
    bool expected_ok = det_class_equals(rep.det, cone_expected_class(spec));
    Json rec;
    rec["trial"] = t;
    rec["h0_factors"] = factor_list(rep.homology.h[0]);
    rec["h1_factors"] = factor_list(rep.homology.h[1]);
    rec["m0"] = rep.homology.m0;
    rec["m1"] = rep.homology.m1;
    rec["det"] = coeff_strings(rep.det.rep());
    rec["expected_class_ok"] = expected_ok;
    rec["fitting_checked"] = rep.fitting_checked;
    if (rep.chain_verdict) rec["chain_verdict"] = *rep.chain_verdict;
    rec["checks"] = check_records_json(rep.checks);
    rec["pass"] = rep.pass && expected_ok;
    all_pass = all_pass && rep.pass && expected_ok;
    if (rep.chain_verdict) all_pass = all_pass && *rep.chain_verdict;
    cones.push_back(std::move(rec));
  }
  j["cone_trials"] = std::move(cones);

  Json mods = Json::array();
  for (long t = 0; t < trials; ++t) {
    ConcreteModule m = realize(random_presented_module(g, l, 6, rng));
    long precision = m.exponent_max() + guard;
    IdealHandle ann = annihilator(m, precision, guard);
    IdealHandle fit = fitting_of_module(m, precision, guard);
    long mu = min_generators(m);

    bool fit_in_ann = true;
    for (const ZG& x : fit.howell_generator_lifts())
      fit_in_ann = fit_in_ann && ann.contains(x);
    bool pow_in_fit =
        ann_power_in_fitting(g, ann.howell_generator_lifts(), mu, fit);
    ConcreteModule dual = pontryagin_dual(m);
    bool duality = annihilator(dual, precision, guard).equals(ann.tau());

    Json rec;
    rec["trial"] = t;
    rec["factors"] = factor_list(m);
    rec["min_generators"] = mu;
    rec["fitting_in_annihilator"] = fit_in_ann;
    rec["ann_power_in_fitting"] = pow_in_fit;
    rec["annihilator_duality"] = duality;
    bool ok = fit_in_ann && pow_in_fit && duality;
    rec["pass"] = ok;
    all_pass = all_pass && ok;
    mods.push_back(std::move(rec));
  }
  j["module_trials"] = std::move(mods);

  if (l % 2 == 1) {
    AugmentationWitnessReport w = augmentation_kernel_witness(l, guard);
    j["prop28"] = witness_json(w);
    all_pass = all_pass && witness_pass(w);
  }

  j["pass"] = all_pass;
  emit(j, out);
  return all_pass ? 0 : 2;
}

int run_theta(long f, long n, const std::string& out) {
  AbelianFieldSpec field(f, {});
  ThetaElement theta = theta_element(field, n);

  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "theta";
  Json cfg;
  cfg["f"] = f;
  cfg["n"] = n;
  j["config"] = std::move(cfg);
  j["galois_group"] = group_json(field.galois_group());
  Json units = Json::array();
  Json coeffs = Json::array();
  for (long a : field.units()) {
    units.push_back(a);
    coeffs.push_back(theta.element.coeff(field.sigma(a)).get_str());
  }
  j["units"] = std::move(units);
  j["coefficients"] = std::move(coeffs);
  emit(j, out);
  return 0;
}

int run_cs_check(long f, long n, long l, long b, long guard,
                 const std::string& out) {
  require_prime(l);
  AbelianFieldSpec field(f, {});
  CoatesSinnottReport rep = coates_sinnott_check(field, n, l, b, 8, guard);

  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "cs-check";
  Json cfg;
  cfg["f"] = f;
  cfg["n"] = n;
  cfg["l"] = l;
  cfg["b"] = b;
  cfg["guard"] = guard;
  j["config"] = std::move(cfg);
  Json units = Json::array();
  Json coeffs = Json::array();
  for (long a : field.units()) {
    units.push_back(a);
    coeffs.push_back(rep.smoothed.coeff(field.sigma(a)).get_str());
  }
  j["units"] = std::move(units);
  j["smoothed"] = std::move(coeffs);
  j["smoothed_integral"] = rep.smoothed_integral;
  Json primes = Json::array();
  for (long p : rep.primes) primes.push_back(p);
  j["primes"] = std::move(primes);
  Json ann = Json::array();
  for (bool x : rep.annihilates) ann.push_back(x);
  j["annihilates"] = std::move(ann);
  j["ideal_contained"] = rep.ideal_contained;
  j["pass"] = rep.pass;
  emit(j, out);
  return rep.pass ? 0 : 2;
}

int run_prop28(long l, long guard, const std::string& out) {
  require_prime(l);
  AugmentationWitnessReport w = augmentation_kernel_witness(l, guard);
  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "prop28";
  Json cfg;
  cfg["l"] = l;
  cfg["guard"] = guard;
  j["config"] = std::move(cfg);
  j["witness"] = witness_json(w);
  bool ok = witness_pass(w);
  j["pass"] = ok;
  emit(j, out);
  return ok ? 0 : 2;
}

int run_homology(const std::string& path, const std::string& out) {
  PerfectComplex c = parse_complex(read_text_file(path));
  ComplexDiagnostic diag = validate_complex(c);
  HomologyReport hr = homology_report(c);

  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "homology";
  Json cfg;
  cfg["path"] = path;
  cfg["l"] = c.l;
  cfg["group"] = group_json(c.group);
  Json ranks = Json::array();
  for (long r : c.ranks) ranks.push_back(r);
  cfg["ranks"] = std::move(ranks);
  j["config"] = std::move(cfg);

  Json degrees = Json::array();
  for (std::size_t i = 0; i < hr.h.size(); ++i) {
    Json d;
    d["degree"] = i;
    d["factors"] = factor_list(hr.h[i]);
    d["order"] = hr.h[i].order().get_str();
    degrees.push_back(std::move(d));
  }
  j["homology"] = std::move(degrees);
  j["m0"] = hr.m0;
  j["m1"] = hr.m1;
  j["concentrated"] = diag.concentrated;
  emit(j, out);
  return 0;
}

int run_detclass(const std::string& path, std::uint64_t seed,
                 const std::string& out) {
  PerfectComplex c = parse_complex(read_text_file(path));
  DetClass d = det_class(c, seed);
  bool splitting_ok = det_class_equals(d, det_class(c, seed + 1));
  PerfectComplex t = truncate(c);
  bool truncation_ok = det_class_equals(d, det_class(t, seed + 2));
  bool dual_ok =
      det_class_equals(det_class(dualize(t), seed + 3), d.tau_inverse());

  Json j;
  j["tool"] = "annfit";
  j["version"] = kVersion;
  j["command"] = "detclass";
  Json cfg;
  cfg["path"] = path;
  cfg["seed"] = seed;
  j["config"] = std::move(cfg);
  j["representative"] = coeff_strings(d.rep());
  j["splitting_independent"] = splitting_ok;
  j["truncation_invariant"] = truncation_ok;
  j["dualization_law"] = dual_ok;
  bool ok = splitting_ok && truncation_ok && dual_ok;
  j["pass"] = ok;
  emit(j, out);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group-ring annihilator/Fitting verification and higher "
               "Stickelberger reports"};
  app.require_subcommand(1);

  long v_l = 3, v_trials = 20, v_guard = kDefaultGuard;
  std::uint64_t v_seed = 1;
  std::string v_group = "C3", v_out;
  bool v_prop28 = false;
  CLI::App* verify = app.add_subcommand(
      "verify", "randomized cone/module verification suite");
  verify->add_option("--l", v_l, "prime l")->envname("ANNFIT_L");
  verify->add_option("--group", v_group, "group descriptor, e.g. C2xC2")
      ->envname("ANNFIT_GROUP");
  verify->add_option("--trials", v_trials, "instances per suite")
      ->envname("ANNFIT_TRIALS");
  verify->add_option("--seed", v_seed, "PRNG seed")->envname("ANNFIT_SEED");
  verify->add_option("--guard", v_guard, "precision guard digits")
      ->envname("ANNFIT_GUARD");
  verify->add_option("--out", v_out, "report path (stdout when absent)")
      ->envname("ANNFIT_OUT");
  verify->add_flag("--prop28", v_prop28,
                   "run only the augmentation-kernel witness");

  long t_f = 4, t_n = 2;
  std::string t_out;
  CLI::App* theta =
      app.add_subcommand("theta", "Stickelberger element coefficients");
  theta->add_option("--f", t_f, "conductor")->envname("ANNFIT_F");
  theta->add_option("--n", t_n, "weight (>= 2)")->envname("ANNFIT_N");
  theta->add_option("--out", t_out, "report path")->envname("ANNFIT_OUT");

  long c_f = 4, c_n = 1, c_l = 3, c_b = 3, c_guard = kDefaultGuard;
  std::string c_out;
  CLI::App* cs = app.add_subcommand(
      "cs-check", "smoothed integrality and annihilation checks");
  cs->add_option("--f", c_f, "conductor")->envname("ANNFIT_F");
  cs->add_option("--n", c_n, "weight (>= 1)")->envname("ANNFIT_N");
  cs->add_option("--l", c_l, "prime l")->envname("ANNFIT_L");
  cs->add_option("--b", c_b, "smoothing parameter, coprime to f*l")
      ->envname("ANNFIT_B");
  cs->add_option("--guard", c_guard, "precision guard digits")
      ->envname("ANNFIT_GUARD");
  cs->add_option("--out", c_out, "report path")->envname("ANNFIT_OUT");

  long p_l = 3, p_guard = kDefaultGuard;
  std::string p_out;
  CLI::App* prop28 =
      app.add_subcommand("prop28", "augmentation-kernel Fitting witness");
  prop28->add_option("--l", p_l, "prime l")->envname("ANNFIT_L");
  prop28->add_option("--guard", p_guard, "precision guard digits")
      ->envname("ANNFIT_GUARD");
  prop28->add_option("--out", p_out, "report path")->envname("ANNFIT_OUT");

  std::string h_path, h_out;
  CLI::App* homology =
      app.add_subcommand("homology", "per-degree homology of a complex file");
  homology->add_option("path", h_path, "complex JSON file")->required();
  homology->add_option("--out", h_out, "report path")->envname("ANNFIT_OUT");

  std::string d_path, d_out;
  std::uint64_t d_seed = 1;
  CLI::App* detclass = app.add_subcommand(
      "detclass", "determinant class and well-definedness checks");
  detclass->add_option("path", d_path, "complex JSON file")->required();
  detclass->add_option("--seed", d_seed, "pivot seed")->envname("ANNFIT_SEED");
  detclass->add_option("--out", d_out, "report path")->envname("ANNFIT_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto start = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    if (*verify)
      rc = run_verify(v_l, v_group, v_trials, v_seed, v_guard, v_prop28, v_out);
    else if (*theta)
      rc = run_theta(t_f, t_n, t_out);
    else if (*cs)
      rc = run_cs_check(c_f, c_n, c_l, c_b, c_guard, c_out);
    else if (*prop28)
      rc = run_prop28(p_l, p_guard, p_out);
    else if (*homology)
      rc = run_homology(h_path, h_out);
    else if (*detclass)
      rc = run_detclass(d_path, d_seed, d_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 1;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cerr << "wall-clock " << ms << " ms\n";
  return rc;
}
