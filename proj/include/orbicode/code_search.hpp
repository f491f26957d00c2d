#pragma once

// Exhaustive search for codes in k^d or l^d under closure constraints.

#include "orbicode/sigma_isometry.hpp"

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace orbicode {

struct CodeConstraints {
  bool sigma_invariant = false;
  bool even = false;
  bool self_dual = false;
  bool self_orthogonal = false;
};

inline constexpr std::size_t kMaxSearchKLength = 24;
inline constexpr std::int64_t kMaxSearchLLength = 6;

namespace detail {

inline void charge(std::uint64_t& nodes, std::uint64_t budget) {
  if (++nodes > budget)
    throw ResourceError("code enumeration exceeded budget of " +
                            std::to_string(budget) + " nodes",
                        nodes);
}

}  // namespace detail

/// All subspaces C of k^d meeting the constraints, ordered by dimension and
/// then by reduced basis. Codes are passed to `on_found` as soon as their
/// dimension level is complete.
inline std::vector<CodeC> enumerate_codes_C(
    std::int64_t p, std::int64_t d, const CodeConstraints& cons,
    std::uint64_t budget = kDefaultBudget,
    const std::function<void(const CodeC&)>& on_found = {}) {
  check_code_shape(p, d);
  const std::size_t n = k_length(p, d);
  if (n > kMaxSearchKLength)
    throw ResourceError("(p-1)d = " + std::to_string(n) +
                            " exceeds the exhaustive search limit of 24",
                        0);
  std::vector<CodeC> found;
  auto emit = [&](const CodeC& c) {
    if (cons.self_dual && (2 * c.dim() != n || !self_dual(c))) return;
    found.push_back(c);
    if (on_found) on_found(c);
  };
  if (d == 0) {
    emit(CodeC::zero(p, 0));
    return found;
  }
  std::optional<KMap> sigma;
  if (cons.sigma_invariant) sigma = code_action(coxeter_sigma(p, d), p, d).k;
  const bool orth = cons.even || cons.self_dual || cons.self_orthogonal;
  const std::size_t max_dim = cons.self_dual ? n / 2 : n;

  auto admissible = [&](const std::vector<KBits>& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (cons.even && qform(p, d, b[i])) return false;
      if (orth)
        for (std::size_t j = i + 1; j < b.size(); ++j)
          if (inner_k(p, d, b[i], b[j])) return false;
    }
    return true;
  };

  std::uint64_t nodes = 0;
  const KBits full = n == 64 ? ~KBits{0} : (KBits{1} << n) - 1;
  std::map<std::size_t, std::set<std::vector<KBits>>> levels;
  levels[0].emplace();
  for (std::size_t dim = 0; dim <= max_dim; ++dim) {
    auto it = levels.find(dim);
    if (it == levels.end()) continue;
    for (const auto& basis : it->second) {
      emit(CodeC(p, d, basis));
      if (dim == max_dim) continue;
      KBits pivots = 0;
      for (KBits r : basis) pivots |= KBits{1} << f2_pivot(r);
      const KBits free = full & ~pivots;
      // nonzero vectors supported on the free columns (already reduced)
      for (KBits v = free; v; v = (v - 1) & free) {
        detail::charge(nodes, budget);
        if (cons.even && qform(p, d, v)) continue;
        if (orth) {
          bool ok = true;
          for (KBits g : basis)
            if (inner_k(p, d, g, v)) {
              ok = false;
              break;
            }
          if (!ok) continue;
        }
        std::vector<KBits> gens = basis;
        gens.push_back(v);
        if (sigma)
          for (KBits w = (*sigma)(v); w != v; w = (*sigma)(w)) gens.push_back(w);
        auto child = f2_rref(gens);
        if (child.size() > max_dim || !admissible(child)) continue;
        levels[child.size()].insert(std::move(child));
      }
    }
    levels.erase(it);
  }
  return found;
}

/// All subspaces D of l^d meeting the constraints (sigma acts trivially on
/// l^d, and evenness of D means self-orthogonality).
inline std::vector<CodeD> enumerate_codes_D(
    std::int64_t p, std::int64_t d, const CodeConstraints& cons,
    std::uint64_t budget = kDefaultBudget,
    const std::function<void(const CodeD&)>& on_found = {}) {
  require_odd_p(p);
  if (!is_prime(p)) throw HypothesisError("p prime", "codes over Z_p need p prime");
  if (d < 0) throw UsageError("d must be nonnegative");
  if (d > kMaxSearchLLength)
    throw ResourceError("d = " + std::to_string(d) +
                            " exceeds the exhaustive search limit of 6",
                        0);
  const int pi = static_cast<int>(p);
  const auto n = static_cast<std::size_t>(d);
  std::vector<CodeD> found;
  auto emit = [&](const CodeD& c) {
    if (cons.self_dual && (2 * c.dim() != n || !self_dual(c))) return;
    found.push_back(c);
    if (on_found) on_found(c);
  };
  const bool orth = cons.even || cons.self_dual || cons.self_orthogonal;
  const std::size_t max_dim = cons.self_dual ? n / 2 : n;
  std::uint64_t nodes = 0;
  std::map<std::size_t, std::set<std::vector<LDigits>>> levels;
  levels[0].emplace();
  for (std::size_t dim = 0; dim <= max_dim; ++dim) {
    auto it = levels.find(dim);
    if (it == levels.end()) continue;
    for (const auto& basis : it->second) {
      emit(CodeD(p, d, basis));
      if (dim == max_dim) continue;
      std::vector<bool> is_pivot(n, false);
      for (const auto& r : basis) is_pivot[fp_pivot(r)] = true;
      std::vector<std::size_t> free;
      for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) free.push_back(j);
      std::vector<int> digits(free.size(), 0);
      while (true) {
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == pi) digits[k++] = 0;
        if (k == digits.size()) break;
        detail::charge(nodes, budget);
        LDigits v(n, 0);
        for (std::size_t j = 0; j < free.size(); ++j) v[free[j]] = digits[j];
        // one representative per line
        if (v[fp_pivot(v)] != 1) continue;
        if (orth) {
          bool ok = inner_l(p, v, v) == 0;
          for (const auto& g : basis)
            if (ok && inner_l(p, g, v)) ok = false;
          if (!ok) continue;
        }
        std::vector<LDigits> gens = basis;
        gens.push_back(v);
        auto child = fp_rref(gens, pi);
        levels[child.size()].insert(std::move(child));
      }
    }
    levels.erase(it);
  }
  return found;
}

}  // namespace orbicode
