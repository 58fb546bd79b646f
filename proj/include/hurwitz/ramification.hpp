#pragma once

// Ramification of the projection (t, x) -> t on the curve f(t, x) = 0.
//
// Over a point t0 the fiber pattern is read off from the root multiplicities
// of f(t0, x), with x = infinity handled in the chart y = 1/x. A multiple
// root at a smooth point of the curve (f_t != 0) has ramification index equal
// to its multiplicity. For the dense form an ordinary node (f_t = 0, nonzero
// Hessian discriminant) on a double root contributes two unramified branches;
// anything worse is reported as unresolved.
//
// Algebraic points are handled in Q[u]/(h) for a squarefree h; when two
// roots of h behave differently a zero divisor appears and h is split.

#include <gmpxx.h>

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/bipoly.hpp"
#include "hurwitz/numfield.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/resultant.hpp"
#include "hurwitz/upoly.hpp"

namespace hurwitz {

struct FiberPattern {
  CycleType type;
  bool resolved = true;  // false if a non-nodal singular point was met
};

namespace detail {

template <class K>
using FiberEval = std::function<UniPoly<K>(const BiPoly&)>;

// Ramification indices of the roots of `factor` (squarefree, each a root of
// the fiber polynomial with multiplicity m).
template <class K>
void classify_roots(const UniPoly<K>& factor, int m, const UniPoly<K>& ft, const UniPoly<K>& hess,
                    bool dense, std::vector<std::size_t>& lengths, bool& resolved) {
  const int d = factor.degree();
  if (m == 1 || !dense) {
    for (int i = 0; i < d; ++i) lengths.push_back(static_cast<std::size_t>(m));
    return;
  }
  UniPoly<K> sing = poly_gcd(factor, ft % factor);
  const int ds = sing.degree() < 0 ? 0 : sing.degree();
  for (int i = 0; i < d - ds; ++i) lengths.push_back(static_cast<std::size_t>(m));
  if (ds == 0) return;
  bool node = m == 2 && poly_gcd(sing, hess % sing).degree() == 0;
  if (node) {
    for (int i = 0; i < 2 * ds; ++i) lengths.push_back(1);
  } else {
    resolved = false;
    for (int i = 0; i < ds; ++i) lengths.push_back(static_cast<std::size_t>(m));
  }
}

template <class K>
FiberPattern fiber_pattern(const BiPoly& f, const FiberEval<K>& at) {
  const int n = f.deg_x();
  const bool dense = !f.is_model() && f.deg_t() > 1;
  auto hessian = [](const BiPoly& g) {
    BiPoly gtx = g.dt().dx();
    return gtx * gtx - g.dt().dt() * g.dx().dx();
  };
  UniPoly<K> g = at(f);
  if (g.is_zero()) throw PolyError("fiber polynomial vanishes identically");
  // Force a decision on the leading coefficient (splits the field if needed).
  (void)(K(1) / g.lc());
  std::vector<std::size_t> lengths;
  bool resolved = true;
  UniPoly<K> ft = at(f.dt()), hess = dense ? at(hessian(f)) : UniPoly<K>();
  for (const auto& [factor, m] : squarefree_decomposition(g)) {
    classify_roots(factor, m, ft, hess, dense, lengths, resolved);
  }
  const int k = n - g.degree();
  if (k > 0) {
    BiPoly r = f.reversed_x();
    UniPoly<K> y = UniPoly<K>::monomial(K(1), 1);
    UniPoly<K> rft = at(r.dt()), rhess = dense ? at(hessian(r)) : UniPoly<K>();
    classify_roots(y, k, rft, rhess, dense, lengths, resolved);
  }
  std::size_t total = 0;
  for (auto l : lengths) total += l;
  if (total != static_cast<std::size_t>(n)) throw PolyError("fiber pattern does not sum to the degree");
  return {CycleType::from_lengths(std::move(lengths)), resolved};
}

}  // namespace detail

inline FiberPattern multiplicity_pattern(const BiPoly& f, const mpq_class& t0) {
  return detail::fiber_pattern<mpq_class>(f, [&](const BiPoly& g) { return g.at(t0); });
}

inline FiberPattern multiplicity_pattern_at_infinity(const BiPoly& f) {
  return multiplicity_pattern(f.reversed_t(), mpq_class(0));
}

// Patterns at the roots of a squarefree h, split into the parts of h on
// which the pattern is constant.
inline std::vector<std::pair<QPoly, FiberPattern>> multiplicity_patterns(const BiPoly& f, const QPoly& h) {
  std::vector<std::pair<QPoly, FiberPattern>> out;
  std::vector<QPoly> todo{h.monic()};
  while (!todo.empty()) {
    QPoly cur = todo.back();
    todo.pop_back();
    if (cur.degree() < 1) continue;
    if (cur.degree() == 1) {
      mpq_class root = -cur.coeff(0) / cur.coeff(1);
      out.emplace_back(cur, multiplicity_pattern(f, root));
      continue;
    }
    NumberField k(cur);
    NumElem u = k.generator();
    try {
      auto pat = detail::fiber_pattern<NumElem>(f, [&](const BiPoly& g) { return g.at(u, k); });
      out.emplace_back(cur, pat);
    } catch (const ZeroDivisor& z) {
      QPoly a = z.factor();
      todo.push_back(a);
      todo.push_back(exact_quotient(cur, a));
    }
  }
  return out;
}

// Quadratic point t^2 + a t + b = 0 (both conjugates).
inline FiberPattern multiplicity_pattern(const BiPoly& f, const mpq_class& a, const mpq_class& b) {
  QPoly h({b, a, mpq_class(1)});
  auto parts = multiplicity_patterns(f, h);
  if (parts.size() != 1) throw PolyError("quadratic point is reducible with differing patterns");
  return parts.front().second;
}

}  // namespace hurwitz
