#pragma once

// Command-line front end. run_cli() takes the argument vector and streams so
// that it can be driven in-process by tests; tools/orbicode_cli.cpp wraps it.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or schema error,
// 3 resource budget exhausted.

#include "orbicode/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace orbicode::cli {

using Json = nlohmann::json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct Job {
  std::int64_t p = 3;
  std::int64_t d = 1;
  std::vector<KBits> c_generators;
  std::vector<LDigits> d_generators;
  std::optional<std::int64_t> twist;  ///< nullopt means all powers 1 .. p-1
  std::string code = "C";             ///< enumerate: which code space
  CodeConstraints constraints;
  std::string series = "theta";
};

// ---------------------------------------------------------------------------
// JSON helpers

inline std::string exact(const Rational& r) { return to_string(r); }
inline std::string exact(const Int& v) { return v.str(); }

inline Json divisors_json(const AbelianQuotient& q) {
  Json a = Json::array();
  for (const auto& d : q.divisors) a.push_back(d.str());
  return a;
}

inline std::string bits_string(KBits v, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if ((v >> i) & 1) s[i] = '1';
  return s;
}

inline Json c_basis_json(const CodeC& c) {
  Json a = Json::array();
  for (KBits g : c.basis()) a.push_back(bits_string(g, c.length()));
  return a;
}

inline Json d_basis_json(const CodeD& dc) {
  Json a = Json::array();
  for (const auto& g : dc.basis()) a.push_back(g);
  return a;
}

// ---------------------------------------------------------------------------
// Job parsing

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("job is missing \"") + key + "\"");
  return j.at(key);
}

inline std::int64_t as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw UsageError(what + " must be an integer");
  return v.get<std::int64_t>();
}

inline bool as_bool(const Json& v, const std::string& what) {
  if (!v.is_boolean()) throw UsageError(what + " must be a boolean");
  return v.get<bool>();
}

inline KBits parse_kword(const Json& v, std::size_t n) {
  std::vector<int> bits;
  if (v.is_string()) {
    for (char ch : v.get<std::string>()) {
      if (ch != '0' && ch != '1') throw UsageError("C generator strings use only 0 and 1");
      bits.push_back(ch - '0');
    }
  } else if (v.is_array()) {
    for (const auto& b : v) {
      const auto x = as_int(b, "C generator entry");
      if (x != 0 && x != 1) throw UsageError("C generator entries must be 0 or 1");
      bits.push_back(static_cast<int>(x));
    }
  } else {
    throw UsageError("C generator must be a bit string or an array of bits");
  }
  if (bits.size() != n)
    throw UsageError("C generator has length " + std::to_string(bits.size()) +
                     ", expected (p-1)d = " + std::to_string(n));
  KBits w = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (bits[i]) w |= KBits{1} << i;
  return w;
}

inline LDigits parse_lword(const Json& v, std::int64_t p, std::int64_t d) {
  if (!v.is_array()) throw UsageError("D generator must be an array of integers");
  if (v.size() != static_cast<std::size_t>(d))
    throw UsageError("D generator has length " + std::to_string(v.size()) +
                     ", expected d = " + std::to_string(d));
  LDigits out;
  for (const auto& x : v)
    out.push_back(static_cast<int>(((as_int(x, "D generator entry") % p) + p) % p));
  return out;
}

}  // namespace detail

inline Job parse_job(const Json& j) {
  static const std::set<std::string> known{"p",    "d",           "C_generators",
                                           "D_generators", "twist", "code",
                                           "constraints",  "series"};
  if (!j.is_object()) throw UsageError("job must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw UsageError("unknown job key \"" + k + "\"");
  Job job;
  job.p = detail::as_int(detail::require(j, "p"), "p");
  job.d = detail::as_int(detail::require(j, "d"), "d");
  if (job.p < 3 || job.p % 2 == 0) throw UsageError("p must be odd (and at least 3)");
  if (!is_prime(job.p)) throw UsageError("p must be prime");
  if (job.d < 1) throw UsageError("d must be positive");
  if (k_length(job.p, job.d) > 62) throw UsageError("(p-1)d must be at most 62");
  const std::size_t n = k_length(job.p, job.d);
  if (j.contains("C_generators")) {
    if (!j["C_generators"].is_array()) throw UsageError("C_generators must be an array");
    for (const auto& g : j["C_generators"]) job.c_generators.push_back(detail::parse_kword(g, n));
  }
  if (j.contains("D_generators")) {
    if (!j["D_generators"].is_array()) throw UsageError("D_generators must be an array");
    for (const auto& g : j["D_generators"])
      job.d_generators.push_back(detail::parse_lword(g, job.p, job.d));
  }
  if (j.contains("twist")) {
    const Json& t = j["twist"];
    if (t.is_string() && t.get<std::string>() == "all") {
      job.twist.reset();
    } else {
      const auto s = detail::as_int(t, "twist");
      if (s <= 0 || s >= job.p) throw UsageError("twist must be in 1 .. p-1 or \"all\"");
      job.twist = s;
    }
  }
  if (j.contains("code")) {
    if (!j["code"].is_string()) throw UsageError("code must be \"C\" or \"D\"");
    job.code = j["code"].get<std::string>();
    if (job.code != "C" && job.code != "D") throw UsageError("code must be \"C\" or \"D\"");
  }
  if (j.contains("constraints")) {
    const Json& c = j["constraints"];
    if (!c.is_object()) throw UsageError("constraints must be an object");
    for (const auto& [k, v] : c.items()) {
      if (k == "sigma_invariant") job.constraints.sigma_invariant = detail::as_bool(v, k);
      else if (k == "even") job.constraints.even = detail::as_bool(v, k);
      else if (k == "self_dual") job.constraints.self_dual = detail::as_bool(v, k);
      else if (k == "self_orthogonal") job.constraints.self_orthogonal = detail::as_bool(v, k);
      else throw UsageError("unknown constraint \"" + k + "\"");
    }
  }
  if (j.contains("series")) {
    if (!j["series"].is_string()) throw UsageError("series must be a string");
    job.series = j["series"].get<std::string>();
    static const std::set<std::string> series{"theta", "voa", "twisted", "eta"};
    if (!series.count(job.series))
      throw UsageError("series must be one of theta, voa, twisted, eta");
  }
  return job;
}

inline Json read_job_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return Json::parse(in);
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open job file '" + path + "'");
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("job is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Commands

inline Json hypothesis_json(const HypothesisError& e) {
  return Json{{"predicate", e.predicate()}, {"message", e.what()}};
}

inline Json cmd_report(const Job& job, std::uint64_t budget) {
  const std::int64_t p = job.p, d = job.d;
  const CodeC c(p, d, job.c_generators);
  const CodeD dc(p, d, job.d_generators);
  const CodeC cp = dual_code_C(c);
  const CodeD dp = dual_code_D(dc);
  Json rep;
  rep["input"] = {{"p", p},
                  {"d", d},
                  {"C_basis", c_basis_json(c)},
                  {"D_basis", d_basis_json(dc)},
                  {"twist", job.twist ? Json(*job.twist) : Json("all")}};

  const CodeHypotheses h = check_hypotheses(c, dc);
  rep["codes"] = {{"dim_C", c.dim()},           {"dim_D", dc.dim()},
                  {"dim_C_perp", cp.dim()},     {"dim_D_perp", dp.dim()},
                  {"C_even", h.c_even},         {"D_even", h.d_even},
                  {"C_sigma_invariant", h.sigma_invariant},
                  {"C_self_dual", h.c_self_dual}, {"D_self_dual", self_dual(dc)}};

  const Lattice l = to_lattice(c, dc);
  const ParityReport par = parity_report(l);
  Json lat = {{"rank", l.rank()},
              {"integral", par.integral},
              {"even", par.even},
              {"unimodular", par.unimodular},
              {"gram_determinant", exact(l.gram_determinant())}};
  lat["discriminant_group"] =
      par.integral ? divisors_json(quotient(dual_lattice(l), l)) : Json(nullptr);
  rep["lattice"] = lat;

  if (auto f = failed_hypothesis(h)) {
    rep["hypothesis_failed"] = {{"predicate", *f},
                                {"message", "standing hypothesis '" + *f + "' does not hold"}};
    return rep;
  }

  std::vector<std::int64_t> powers;
  if (job.twist) powers.push_back(*job.twist);
  else
    for (std::int64_t s = 1; s < p; ++s) powers.push_back(s);
  Json twists = Json::array();
  for (std::int64_t s : powers) {
    const Isometry iso = twist_on(l, p, d, s);
    const SpectralData sd = spectral(iso);
    const Lattice r = radical(iso);
    const Int dt = dim_T(l, r);
    const QdimReport q = qdim_exact(iso, sd, dt, r);
    Json m = Json::object();
    for (const auto& [dv, md] : sd.m)
      if (md != 0) m[std::to_string(dv)] = exact(md);
    Json rr = Json::array();
    for (const auto& x : sd.r) rr.push_back(exact(x));
    twists.push_back({{"s", s},
                      {"m", m},
                      {"r", rr},
                      {"L_mod_R", divisors_json(quotient(l, r))},
                      {"R_mod_coinvariants", divisors_json(quotient(r, iso.one_minus_image(l)))},
                      {"num_twisted_irreps", exact(num_twisted_irreps(iso, r))},
                      {"dim_T", exact(dt)},
                      {"rho", exact(rho_twisted(sd))},
                      {"qdim", {{"sqrt_of", exact(q.theorem.squared())}}},
                      {"qdim_text", q.theorem.to_string()}});
  }
  rep["twists"] = twists;
  rep["group_like"] = group_like_fusion(c, dc);
  try {
    const IrrCensus cs = irr_census(c, dc, budget);
    Json tw = Json::array();
    for (const auto& x : cs.twisted) tw.push_back(exact(x));
    Json ws = Json::array();
    for (const auto& w : cs.weights_mod_Z) ws.push_back(exact(w));
    rep["irr_census"] = {{"order", exact(cs.order)},
                         {"expected", exact(cs.expected)},
                         {"untwisted", exact(cs.untwisted)},
                         {"twisted", tw},
                         {"weights_mod_Z", ws},
                         {"weights_ok", cs.weights_ok},
                         {"rho", exact(cs.rho)},
                         {"rho_closed_form", exact(cs.rho_closed_form)},
                         {"ok", cs.ok()}};
  } catch (const HypothesisError& e) {
    rep["irr_census"] = {{"hypothesis_failed", hypothesis_json(e)}};
  }
  return rep;
}

inline Json series_json(const std::string& name, const QSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms()) terms.push_back({exact(e), exact(c)});
  return {{"series", name},
          {"denominator", s.denom()},
          {"precision", exact(s.precision())},
          {"terms", terms}};
}

inline Json cmd_theta(const Job& job, std::int64_t order, std::uint64_t budget) {
  if (order < 1) throw UsageError("--order must be at least 1");
  if (job.series == "eta") return series_json("eta", eta_series(order));
  const CodeC c(job.p, job.d, job.c_generators);
  const CodeD dc(job.p, job.d, job.d_generators);
  const Lattice l = to_lattice(c, dc);
  if (job.series == "theta") return series_json("theta", theta_coeffs(l, Rational(order), budget));
  if (job.series == "voa") return series_json("voa", lattice_voa_char(l, order, budget));
  const Isometry iso = twist_on(l, job.p, job.d, job.twist.value_or(1));
  return series_json("twisted", twisted_char(spectral(iso), job.p, l.rank(), order));
}

inline Json check_json(const CheckResult& r) {
  return {{"suite", r.suite},   {"name", r.name},       {"criterion", r.criterion},
          {"pass", r.pass},     {"detail", r.detail},   {"seconds", r.seconds}};
}

inline std::vector<double> parse_y_schedule(const std::string& text) {
  std::vector<double> ys;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double y = std::stod(item, &used);
      if (used != item.size() || !(y > 0)) throw std::invalid_argument(item);
      ys.push_back(y);
    } catch (const std::exception&) {
      throw UsageError("bad --y-schedule entry '" + item + "'");
    }
  }
  if (ys.empty()) throw UsageError("--y-schedule is empty");
  return ys;
}

inline Json error_json(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

/// Entry point; `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Lattice orbifold code tools", "orbicode"};
  app.require_subcommand(1);
  std::string job_path;
  std::int64_t theta_order = 4;
  std::int64_t verify_order = 0;
  std::uint64_t budget = kDefaultBudget;
  std::string y_text;
  std::string suite;

  auto add_common = [&](CLI::App* sub, bool needs_job) {
    auto* opt = sub->add_option("--job", job_path, "job file, - for stdin");
    if (needs_job) opt->required();
    sub->add_option("--budget", budget, "enumeration node budget");
  };
  auto* report = app.add_subcommand("report", "full orbifold report for one code pair");
  add_common(report, true);
  auto* enumerate = app.add_subcommand("enumerate", "stream all codes meeting constraints");
  add_common(enumerate, true);
  auto* theta = app.add_subcommand("theta", "q-expansions as JSON");
  add_common(theta, true);
  theta->add_option("--order", theta_order, "series truncation order")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  add_common(verify, false);
  verify->add_option("suite", suite, "duality, parity, spectral, qdim, census, cocycle, numeric or all")
      ->required();
  verify->add_option("--order", verify_order, "series truncation order for numeric checks");
  verify->add_option("--y-schedule", y_text, "comma separated y values");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    out << error_json("usage", e.what()).dump(2) << "\n";
    return kUsage;
  }

  try {
    if (*report) {
      out << cmd_report(parse_job(read_job_json(job_path, in)), budget).dump(2) << "\n";
      return kOk;
    }
    if (*theta) {
      out << cmd_theta(parse_job(read_job_json(job_path, in)), theta_order, budget).dump(2) << "\n";
      return kOk;
    }
    if (*enumerate) {
      const Job job = parse_job(read_job_json(job_path, in));
      bool first = true;
      out << "[";
      auto emit = [&](const Json& j) {
        out << (first ? "\n" : ",\n") << j.dump();
        out.flush();
        first = false;
      };
      if (job.code == "C") {
        const KMap sigma = code_action(coxeter_sigma(job.p, job.d), job.p, job.d).k;
        enumerate_codes_C(job.p, job.d, job.constraints, budget, [&](const CodeC& c) {
          const Evenness ev = evenness(c, CodeD::zero(job.p, job.d));
          const bool inv = is_invariant(c, sigma);
          const bool sd = self_dual(c);
          emit({{"basis", c_basis_json(c)},
                {"dim", c.dim()},
                {"even", ev.c_even},
                {"self_dual", sd},
                {"sigma_invariant", inv},
                {"group_like", inv && ev.c_even && sd}});
        });
      } else {
        enumerate_codes_D(job.p, job.d, job.constraints, budget, [&](const CodeD& dc) {
          emit({{"basis", d_basis_json(dc)},
                {"dim", dc.dim()},
                {"even", self_orthogonal(dc)},
                {"self_dual", self_dual(dc)},
                {"sigma_invariant", true}});
        });
      }
      out << (first ? "]\n" : "\n]\n");
      return kOk;
    }
    // verify
    VerifyOptions opt;
    opt.budget = budget;
    opt.order = verify_order;
    if (!y_text.empty()) opt.y_schedule = parse_y_schedule(y_text);
    std::vector<std::string> names;
    if (suite == "all")
      for (const auto& [n, f] : verify_suites()) names.push_back(n);
    else
      names.push_back(suite);
    for (const auto& n : names) {
      bool known = false;
      for (const auto& entry : verify_suites()) known = known || entry.first == n;
      if (!known) throw UsageError("unknown suite '" + n + "'");
    }
    Json checks = Json::array();
    bool pass = true;
    for (const auto& n : names)
      for (const auto& r : run_suite(n, opt)) {
        pass = pass && r.pass;
        checks.push_back(check_json(r));
      }
    out << Json{{"suite", suite}, {"pass", pass}, {"checks", checks}}.dump(2) << "\n";
    return pass ? kOk : kVerifyFailed;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    out << error_json("usage", e.what()).dump(2) << "\n";
    return kUsage;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    out << error_json("hypothesis", e.what()).dump(2) << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    Json j = error_json("resource", e.what());
    j["error"]["spent"] = e.spent();
    out << j.dump(2) << "\n";
    return kResource;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << "\n";
    out << error_json("consistency", e.what()).dump(2) << "\n";
    return kVerifyFailed;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    out << error_json("schema", e.what()).dump(2) << "\n";
    return kUsage;
  }
}

}  // namespace orbicode::cli
