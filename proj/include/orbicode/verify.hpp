#pragma once

// Named verification suites shared by the CLI and the acceptance runner.
// Each check records a pass flag, a short detail string and its runtime.

#include "orbicode/qseries.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace orbicode {

struct VerifyOptions {
  std::uint64_t budget = kDefaultBudget;
  std::vector<double> y_schedule = default_y_schedule();
  std::int64_t order = 0;
  std::uint64_t seed = 20240601;
};

struct CheckResult {
  std::string suite;
  std::string name;
  int criterion = 0;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

namespace detail {

/// Runs `body`, which returns (pass, detail). Exceptions become failures
/// with the exception text; resource exhaustion is rethrown.
inline CheckResult run_check(const std::string& suite, const std::string& name,
                             int criterion,
                             const std::function<std::pair<bool, std::string>()>& body,
                             double time_limit = 0) {
  CheckResult r;
  r.suite = suite;
  r.name = name;
  r.criterion = criterion;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [ok, detail] = body();
    r.pass = ok;
    r.detail = std::move(detail);
  } catch (const ResourceError&) {
    throw;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && r.seconds > time_limit) {
    r.pass = false;
    r.detail += "; runtime " + std::to_string(r.seconds) + " s exceeds " +
                std::to_string(time_limit) + " s";
  }
  return r;
}

struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  void record(bool ok, const std::string& what) {
    ++cases;
    if (!ok && failures++ == 0) first_failure = what;
  }
  std::pair<bool, std::string> result() const {
    std::string d = std::to_string(cases) + " cases";
    if (failures) d += ", " + std::to_string(failures) + " failed, first: " + first_failure;
    return {failures == 0 && cases > 0, d};
  }
};

inline std::string describe(const CodeC& c, const CodeD& dc) {
  std::ostringstream os;
  os << "p=" << c.p() << " d=" << c.d() << " dimC=" << c.dim() << " dimD=" << dc.dim();
  return os.str();
}

/// Admissible pairs: C sigma-invariant and even, D even.
inline std::vector<std::pair<CodeC, CodeD>> admissible_pairs(std::int64_t p, std::int64_t d,
                                                             std::uint64_t budget) {
  CodeConstraints even;
  even.even = true;
  CodeConstraints cons = even;
  cons.sigma_invariant = true;
  std::vector<std::pair<CodeC, CodeD>> out;
  const auto ds = enumerate_codes_D(p, d, even, budget);
  for (const auto& c : enumerate_codes_C(p, d, cons, budget))
    for (const auto& dc : ds) out.emplace_back(c, dc);
  return out;
}

inline CodeC random_code_C(std::int64_t p, std::int64_t d, std::mt19937_64& rng) {
  const KBits mask = (KBits{1} << k_length(p, d)) - 1;
  std::vector<KBits> gens(std::uniform_int_distribution<int>(0, 3)(rng));
  for (auto& g : gens) g = rng() & mask;
  return CodeC(p, d, gens);
}

inline CodeD random_code_D(std::int64_t p, std::int64_t d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, static_cast<int>(p - 1));
  std::vector<LDigits> gens(std::uniform_int_distribution<int>(0, 2)(rng));
  for (auto& g : gens) {
    g.resize(static_cast<std::size_t>(d));
    for (auto& x : g) x = digit(rng);
  }
  return CodeD(p, d, gens);
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<CheckResult> verify_duality(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check("duality", "dual lattice of L_E is L_{E^perp}", 1, [&] {
    detail::Tally t;
    std::size_t modules = 0;
    for (const auto& c0 : enumerate_codes_C(3, 1, {}, opt.budget))
      for (const auto& d0 : enumerate_codes_D(3, 1, {}, opt.budget)) {
        ++modules;
        SubmoduleE e{3, 1, {}};
        for (KBits u : c0.basis()) e.generators.emplace_back(u, LDigits{0});
        for (const auto& a : d0.basis()) e.generators.emplace_back(0, a);
        auto [c, dc] = split_E(e);
        const Lattice l = to_lattice(c, dc);
        t.record(dual_lattice(l) == to_lattice(dual_code_C(c), dual_code_D(dc)),
                 detail::describe(c, dc));
      }
    auto [ok, d] = t.result();
    return std::make_pair(ok && modules == 10,
                          d + ", " + std::to_string(modules) + " submodules");
  }, 5.0));
  out.push_back(detail::run_check("duality", "integral/unimodular iff self-orthogonal/self-dual", 1, [&] {
    detail::Tally t;
    for (const auto& c : enumerate_codes_C(3, 1, {}, opt.budget))
      for (const auto& dc : enumerate_codes_D(3, 1, {}, opt.budget)) {
        const ParityReport par = parity_report(to_lattice(c, dc));
        t.record(par.integral == (self_orthogonal(c) && self_orthogonal(dc)) &&
                     par.unimodular == (self_dual(c) && self_dual(dc)),
                 detail::describe(c, dc));
      }
    return t.result();
  }, 5.0));
  return out;
}

inline std::vector<CheckResult> verify_parity(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check("parity", "even iff C isotropic and D self-orthogonal", 2, [&] {
    detail::Tally t;
    auto check = [&](const CodeC& c, const CodeD& dc) {
      const Evenness ev = evenness(c, dc);
      t.record(parity_report(to_lattice(c, dc)).even ==
                   (ev.c_even && self_orthogonal(dc)),
               detail::describe(c, dc));
    };
    for (const auto& c : enumerate_codes_C(3, 1, {}, opt.budget))
      for (const auto& dc : enumerate_codes_D(3, 1, {}, opt.budget)) check(c, dc);
    std::mt19937_64 rng(opt.seed);
    for (auto [p, d] : {std::pair<std::int64_t, std::int64_t>{5, 1}, {3, 2}})
      for (int i = 0; i < 100; ++i)
        check(detail::random_code_C(p, d, rng), detail::random_code_D(p, d, rng));
    return t.result();
  }));
  out.push_back(detail::run_check("parity", "weight additivity mod 2", 7, [&] {
    detail::Tally t;
    std::mt19937_64 rng(opt.seed + 1);
    CodeConstraints so;
    so.self_orthogonal = true;
    struct Pool {
      std::int64_t p, d;
      std::vector<CodeC> cs;
      std::vector<CodeD> ds;
    };
    std::vector<Pool> pools;
    for (auto [p, d] : {std::pair<std::int64_t, std::int64_t>{3, 1}, {3, 2}, {5, 1}, {5, 2}})
      pools.push_back({p, d, enumerate_codes_C(p, d, so, opt.budget),
                       enumerate_codes_D(p, d, so, opt.budget)});
    for (int i = 0; i < 500; ++i) {
      const Pool& pool = pools[static_cast<std::size_t>(i) % pools.size()];
      const CodeC& c = detail::pick(pool.cs, rng);
      const CodeD& dc = detail::pick(pool.ds, rng);
      const auto cw = c.words();
      const auto dw = dc.words();
      KBits u = detail::pick(cw, rng), v = detail::pick(cw, rng);
      LDigits a = detail::pick(dw, rng), b = detail::pick(dw, rng), ab(a.size());
      for (std::size_t j = 0; j < a.size(); ++j)
        ab[j] = static_cast<int>((a[j] + b[j]) % pool.p);
      const Rational diff = weight(pool.p, pool.d, u ^ v, ab) - weight(pool.p, pool.d, u, a) -
                            weight(pool.p, pool.d, v, b);
      t.record(is_integer(diff / 2), detail::describe(c, dc));
    }
    return t.result();
  }));
  return out;
}

inline std::vector<CheckResult> verify_spectral(const VerifyOptions&) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check("spectral", "Coxeter element spectral data", 3, [&] {
    detail::Tally t;
    for (std::int64_t p : {3, 5, 7})
      for (std::int64_t d : {1, 2}) {
        const Isometry s = coxeter_sigma(p, d);
        const SpectralData sd = spectral(s);
        IntPoly phi{Int(1)};
        for (std::int64_t i = 0; i < d; ++i) phi = poly_mul(phi, cyclotomic(p));
        bool ok = sd.char_poly == phi;
        auto m_at = [&](std::int64_t k) {
          auto it = sd.m.find(k);
          return it == sd.m.end() ? Int(0) : it->second;
        };
        ok = ok && m_at(p) == d && m_at(1) == -d;
        for (std::int64_t i = 1; i < p; ++i) ok = ok && sd.r[static_cast<std::size_t>(i)] == d;
        Int sum = 0, weighted = 0;
        for (const auto& [dv, md] : sd.m) {
          sum += md;
          weighted += Int(dv) * md;
        }
        ok = ok && sum == 0 && weighted == Int(static_cast<long>(sd.rank));
        t.record(ok, "p=" + std::to_string(p) + " d=" + std::to_string(d));
      }
    return t.result();
  }, 5.0));
  return out;
}

inline std::vector<CheckResult> verify_qdim(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  struct Case {
    CodeC c;
    CodeD dc;
    std::int64_t s;
  };
  std::vector<Case> grid;
  for (auto [p, d] : {std::pair<std::int64_t, std::int64_t>{3, 1}, {3, 2}, {5, 1}, {5, 2}})
    for (const auto& [c, dc] : detail::admissible_pairs(p, d, opt.budget))
      for (std::int64_t s = 1; s < p; ++s) grid.push_back({c, dc, s});
  auto tag = [](const Case& k) { return detail::describe(k.c, k.dc) + " s=" + std::to_string(k.s); };

  out.push_back(detail::run_check("qdim", "theorem, corollary and code formula agree", 4, [&] {
    detail::Tally t;
    for (const auto& k : grid) {
      const std::int64_t p = k.c.p(), d = k.c.d();
      const Lattice l = to_lattice(k.c, k.dc);
      const Isometry s = twist_on(l, p, d, k.s);
      const Lattice r = intersect(s.one_minus_image(dual_lattice(l)), l);
      const QdimReport rep = qdim_exact(s, spectral(s), dim_T(l, r), r);
      const QdimValue code(Rational(
          ipow(Int(2), static_cast<unsigned>(dual_code_C(k.c).dim() - k.c.dim()))));
      const QdimValue forced(Rational(
          ipow(Int(2), static_cast<unsigned>((p - 1) * d - 2 * static_cast<std::int64_t>(k.c.dim())))));
      t.record(rep.corollary && *rep.corollary == rep.theorem && rep.theorem == code &&
                   code == forced,
               tag(k));
    }
    return t.result();
  }));
  out.push_back(detail::run_check("qdim", "radical data via Smith normal form", 5, [&] {
    detail::Tally t;
    for (const auto& k : grid) t.record(radical_data_check(k.c, k.dc, k.s).all(), tag(k));
    return t.result();
  }));
  out.push_back(detail::run_check("qdim", "global dimension", 6, [&] {
    detail::Tally t;
    for (const auto& k : grid) {
      const Lattice l = to_lattice(k.c, k.dc);
      const Isometry s = twist_on(l, k.c.p(), k.c.d(), k.s);
      const Lattice r = radical(s);
      const QdimReport rep = qdim_exact(s, spectral(s), dim_T(l, r), r);
      t.record(Rational(num_twisted_irreps(s, r)) * rep.theorem.squared() ==
                   Rational(quotient(dual_lattice(l), l).order()),
               tag(k));
    }
    return t.result();
  }));
  return out;
}

inline std::vector<CheckResult> verify_cocycle(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  struct Case {
    Lattice l;
    Isometry iso;
    std::string tag;
  };
  std::vector<Case> cases;
  for (auto [p, d] : {std::pair<std::int64_t, std::int64_t>{3, 1}, {3, 2}, {5, 1}, {5, 2}})
    for (const auto& [c, dc] : detail::admissible_pairs(p, d, opt.budget)) {
      const Lattice l = to_lattice(c, dc);
      for (std::int64_t s = 1; s < p; ++s)
        cases.push_back({l, twist_on(l, p, d, s),
                         detail::describe(c, dc) + " s=" + std::to_string(s)});
    }
  std::mt19937_64 rng(opt.seed + 2);
  auto random_member = [&](const Lattice& l) {
    std::uniform_int_distribution<int> coef(-4, 4);
    RatVector x(l.rank());
    for (auto& v : x) v = coef(rng);
    return l.vector_from(x);
  };
  auto plus = [](RatVector a, const RatVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };

  out.push_back(detail::run_check("cocycle", "c and c^sigma alternating, bilinear, sigma-invariant", 8, [&] {
    detail::Tally t;
    for (const auto& k : cases) {
      const CocycleSpec sp(k.iso);
      const Int& s = sp.modulus();
      bool ok = true;
      for (int trial = 0; trial < 6 && ok; ++trial) {
        const RatVector a = random_member(k.l), b = random_member(k.l), g = random_member(k.l);
        for (auto f : {&c_standard, &c_sigma}) {
          ok = ok && f(sp, a, a) == 0 && f(sp, plus(a, b), a) == f(sp, b, a);
          ok = ok && f(sp, plus(a, b), g) == mod(f(sp, a, g) + f(sp, b, g), s);
          ok = ok && f(sp, a, plus(b, g)) == mod(f(sp, a, b) + f(sp, a, g), s);
          ok = ok && f(sp, k.iso.apply(a), k.iso.apply(b)) == f(sp, a, b);
        }
      }
      t.record(ok, k.tag);
    }
    return t.result();
  }));
  out.push_back(detail::run_check("cocycle", "appendix forms agree with even-lattice forms", 8, [&] {
    detail::Tally t;
    for (const auto& k : cases) {
      const CocycleSpec sp(k.iso);
      bool ok = true;
      for (std::size_t i = 0; i < k.l.rank(); ++i)
        for (std::size_t j = 0; j < k.l.rank(); ++j) {
          const RatVector a = k.l.basis_vector(i), b = k.l.basis_vector(j);
          ok = ok && appendix_form(sp, CocycleKind::c_sigma, a, b) == c_sigma(sp, a, b);
          ok = ok && appendix_form(sp, CocycleKind::c, a, b) == c_standard(sp, a, b);
          ok = ok && c_sigma_check(sp, a, b) == c_sigma_via_f(sp, a, b);
          Rational half_sum = k.l.inner(a, b) / 2;
          for (std::int64_t i = 1; i <= (sp.p() - 1) / 2; ++i) half_sum += sp.twisted_inner(i, a, b);
          ok = ok && c_check(sp, a, b) == half_sum;
        }
      t.record(ok, k.tag);
    }
    return t.result();
  }));
  out.push_back(detail::run_check("cocycle", "radical of c^sigma equals ((1-sigma)L°) cap L", 8, [&] {
    detail::Tally t;
    for (const auto& k : cases)
      t.record(radical_of(CocycleSpec(k.iso)) ==
                   intersect(k.iso.one_minus_image(dual_lattice(k.l)), k.l),
               k.tag);
    return t.result();
  }));
  return out;
}

inline std::vector<CheckResult> verify_numeric(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  for (std::int64_t p : {3, 5}) {
    out.push_back(detail::run_check("numeric", "numeric qdim p=" + std::to_string(p), 9, [&] {
      const Isometry s = coxeter_sigma(p, 1);
      const Lattice r = radical(s);
      const Int dt = dim_T(s.lattice(), r);
      const double exact = qdim_exact(s, spectral(s), dt, r).theorem.to_double();
      const NumericQdim q =
          numeric_qdim(s.lattice(), spectral(s), dt, opt.y_schedule, opt.order, 1e-9, opt.budget);
      const double dev = std::abs(q.value - exact);
      std::ostringstream os;
      os.precision(12);
      os << "value " << q.value << " exact " << exact << " deviation " << dev
         << " error estimate " << q.error;
      for (const auto& pt : q.points)
        if (pt.y == *std::min_element(opt.y_schedule.begin(), opt.y_schedule.end()))
          os << " raw ratio at y=" << pt.y << " " << pt.ratio;
      return std::make_pair(dev < 1e-6, os.str());
    }, 10.0));
  }
  out.push_back(detail::run_check("numeric", "theta and eta transformation residuals", 9, [&] {
    double worst = eta_transform_residual(1.0);
    for (std::int64_t p : {3, 5})
      for (double y : {0.5, 1.0, 2.0})
        worst = std::max(worst, transform_check(build_N(p), y, 60, opt.budget));
    std::ostringstream os;
    os << "max residual " << worst;
    return std::make_pair(worst < 1e-8, os.str());
  }, 10.0));
  return out;
}

inline std::vector<CheckResult> verify_census(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(detail::run_check("census", "Irr census for self-dual invariant codes", 10, [&] {
    detail::Tally t;
    std::ostringstream found;
    CodeConstraints cons;
    cons.self_dual = cons.sigma_invariant = cons.even = true;
    for (auto [p, d] : {std::pair<std::int64_t, std::int64_t>{5, 2}, {3, 3}}) {
      std::size_t n = 0;
      try {
        for (const auto& c : enumerate_codes_C(p, d, cons, opt.budget)) {
          ++n;
          const IrrCensus cs = irr_census(c, CodeD::zero(p, d), opt.budget);
          t.record(cs.ok(), detail::describe(c, CodeD::zero(p, d)) +
                                " order " + cs.order.str());
        }
        found << "p=" << p << " d=" << d << ": " << n << " codes; ";
      } catch (const ResourceError&) {
        found << "p=" << p << " d=" << d << ": search over budget; ";
      }
    }
    // existence is best-effort: an empty search is reported, not failed
    return std::make_pair(t.failures == 0, found.str() + t.result().second);
  }));
  out.push_back(detail::run_check("census", "twisted lowest weight closed form", 10, [&] {
    detail::Tally t;
    for (std::int64_t p : {3, 5, 7})
      for (std::int64_t d : {1, 2, 3})
        t.record(rho_twisted(spectral(coxeter_sigma(p, d))) ==
                     Rational(d * (p - 1) * (p + 1), 24 * p),
                 "p=" + std::to_string(p) + " d=" + std::to_string(d));
    return t.result();
  }));
  return out;
}

inline const std::vector<std::pair<std::string,
                                   std::vector<CheckResult> (*)(const VerifyOptions&)>>&
verify_suites() {
  static const std::vector<
      std::pair<std::string, std::vector<CheckResult> (*)(const VerifyOptions&)>>
      suites{{"duality", &verify_duality}, {"parity", &verify_parity},
             {"spectral", &verify_spectral}, {"qdim", &verify_qdim},
             {"census", &verify_census}, {"cocycle", &verify_cocycle},
             {"numeric", &verify_numeric}};
  return suites;
}

inline std::vector<CheckResult> run_suite(const std::string& name, const VerifyOptions& opt) {
  for (const auto& [n, f] : verify_suites())
    if (n == name) return f(opt);
  throw UsageError("unknown suite '" + name + "'");
}

}  // namespace orbicode
