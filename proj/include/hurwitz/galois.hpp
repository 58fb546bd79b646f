#pragma once

// Verification of explicit Galois polynomials f(t, x): full ramification
// reports, Dedekind cycle-type sampling against a catalog group, and
// intervals of t on which every specialization is totally real.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/bipoly.hpp"
#include "hurwitz/catalog.hpp"
#include "hurwitz/modp.hpp"
#include "hurwitz/monodromy.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/perm_group.hpp"
#include "hurwitz/ramification.hpp"
#include "hurwitz/real_roots.hpp"
#include "hurwitz/resultant.hpp"

namespace hurwitz {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BranchEntry {
  QPoly locus;  // monic; empty for t = infinity
  bool at_infinity = false;
  FiberPattern pattern;
  bool numeric = false;  // pattern from numerical monodromy at a singular fiber

  int points() const { return at_infinity ? 1 : locus.degree(); }
  std::string label(const std::string& var = "t") const {
    if (at_infinity) return var + "=inf";
    if (locus.degree() == 1) {
      mpq_class r = -locus.coeff(0);
      return var + "=" + r.get_str();
    }
    return to_string(locus, var) + "=0";
  }
};

struct RamificationReport {
  int degree = 0;
  std::vector<BranchEntry> branches;  // nontrivial fibers only
  long index_sum = 0;
  long genus = 0;
  int numeric_fibers = 0;  // fibers settled by numerical monodromy

  // One cycle type per branch point (algebraic points counted with their
  // conjugates), sorted.
  std::vector<CycleType> structure() const {
    std::vector<CycleType> out;
    for (const auto& b : branches) {
      for (int i = 0; i < b.points(); ++i) out.push_back(b.pattern.type);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::size_t num_branch_points() const { return structure().size(); }
};

namespace detail {

// Candidate loci: squarefree factors of disc_x f and of lc_x f, made
// pairwise coprime.
inline std::vector<QPoly> candidate_loci(const BiPoly& f) {
  QPoly d = disc_x(f);
  if (d.is_zero()) throw VerifyError("f has a repeated factor in x; the cover is degenerate");
  std::vector<QPoly> parts;
  for (const auto& [h, e] : squarefree_decomposition(d)) parts.push_back(h);
  QPoly lc = squarefree_part(f.lc_x());
  for (const auto& h : parts) {
    if (lc.degree() < 1) break;
    QPoly g = poly_gcd(lc, h);
    if (g.degree() >= 1) lc = exact_quotient(lc, g);
  }
  if (lc.degree() >= 1) parts.push_back(lc.monic());
  return parts;
}

}  // namespace detail

inline RamificationReport ramification_report(const BiPoly& f) {
  RamificationReport r;
  r.degree = f.deg_x();
  if (r.degree < 1) throw VerifyError("ramification report needs positive x-degree");
  const CycleType trivial = CycleType::from_lengths(std::vector<std::size_t>(static_cast<std::size_t>(r.degree), 1));
  const auto loci = detail::candidate_loci(f);
  std::vector<cplx> all_points;
  for (const auto& h : loci) {
    for (const auto& z : complex_roots(h)) all_points.push_back(z);
  }
  // Unresolved singular fibers fall back to numerical monodromy.
  auto numeric_pattern = [&](const BiPoly& g, cplx t0, const std::vector<cplx>& others) {
    Permutation p = local_monodromy(g, t0, safe_radius(t0, others));
    return FiberPattern{CycleType::of(p), true};
  };
  for (const auto& h : loci) {
    for (auto& [part, pat] : multiplicity_patterns(f, h)) {
      bool numeric = false;
      if (!pat.resolved) {
        pat = numeric_pattern(f, complex_roots(part).front(), all_points);
        numeric = true;
        ++r.numeric_fibers;
      }
      if (pat.type == trivial) continue;
      r.branches.push_back({part, false, pat, numeric});
    }
  }
  FiberPattern inf = multiplicity_pattern_at_infinity(f);
  bool inf_numeric = false;
  if (!inf.resolved) {
    std::vector<cplx> inverted;
    for (const auto& z : all_points) {
      if (std::abs(z) > 0) inverted.push_back(1.0 / z);
    }
    inf = numeric_pattern(f.reversed_t(), 0.0, inverted);
    inf_numeric = true;
    ++r.numeric_fibers;
  }
  if (inf.type != trivial) r.branches.push_back({QPoly(), true, inf, inf_numeric});
  for (const auto& b : r.branches) r.index_sum += static_cast<long>(b.pattern.type.index()) * b.points();
  if (r.index_sum % 2 != 0) throw VerifyError("ramification index sum is odd");
  r.genus = (r.index_sum - 2L * r.degree + 2) / 2;
  std::sort(r.branches.begin(), r.branches.end(), [](const BranchEntry& a, const BranchEntry& b) {
    if (a.at_infinity != b.at_infinity) return !a.at_infinity;
    if (a.locus.degree() != b.locus.degree()) return a.locus.degree() < b.locus.degree();
    return a.label() < b.label();
  });
  return r;
}

// ---------------------------------------------------------------------------
// Dedekind sampling

struct DedekindGrid {
  std::vector<mpq_class> t_values;
  std::vector<std::uint64_t> primes;
};

// t-values avoiding the branch locus and primes in (lo, hi), both seeded.
inline DedekindGrid default_grid(const BiPoly& f, std::size_t n_t = 25, std::size_t n_p = 40,
                                 std::uint64_t seed = 0, std::uint64_t lo = 1000, std::uint64_t hi = 100000) {
  DedekindGrid g;
  std::mt19937_64 rng(seed);
  if (f.deg_t() <= 0) {
    g.t_values.push_back(0);
  } else {
    QPoly disc = disc_x(f), lc = f.lc_x();
    std::uniform_int_distribution<long> num(-60, 60), den(1, 12);
    std::size_t guard = 0;
    while (g.t_values.size() < n_t && guard++ < 100000) {
      mpq_class t(num(rng), den(rng));
      t.canonicalize();
      if (disc.eval(t) == 0 || lc.eval(t) == 0) continue;
      if (std::find(g.t_values.begin(), g.t_values.end(), t) != g.t_values.end()) continue;
      g.t_values.push_back(t);
    }
  }
  std::uniform_int_distribution<std::uint64_t> pr(lo, hi);
  std::size_t want = f.deg_t() <= 0 ? n_t * n_p : n_p;
  std::size_t guard = 0;
  while (g.primes.size() < want && guard++ < 1000000) {
    std::uint64_t p = next_prime(pr(rng));
    if (p >= hi) continue;
    if (std::find(g.primes.begin(), g.primes.end(), p) != g.primes.end()) continue;
    g.primes.push_back(p);
  }
  std::sort(g.primes.begin(), g.primes.end());
  return g;
}

// Cycle type of Frobenius at p for f(t0, x); nullopt for bad reduction.
inline std::optional<CycleType> frobenius_type(const BiPoly& f, const mpq_class& t0, std::uint64_t p) {
  u64 tp;
  if (!reduce_mod(t0, p, tp)) return std::nullopt;
  const int n = f.deg_x();
  std::vector<u64> c(static_cast<std::size_t>(n + 1), 0);
  for (int j = f.deg_t(); j >= 0; --j) {
    const QPoly& row = f.rows()[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < c.size(); ++k) {
      u64 v = 0;
      if (k < row.coeffs().size() && !reduce_mod(row.coeffs()[k], p, v)) return std::nullopt;
      c[k] = addmod(mulmod(c[k], tp, p), v, p);
    }
  }
  ModPoly g = modp::make(std::move(c), p);
  if (g.degree() != n) return std::nullopt;
  if (modp::gcd(g, modp::derivative(g)).degree() > 0) return std::nullopt;
  std::vector<std::size_t> lengths;
  for (int d : factor_degrees_squarefree(g)) lengths.push_back(static_cast<std::size_t>(d));
  return CycleType::from_lengths(std::move(lengths));
}

struct GroupVerdict {
  enum class Kind { Consistent, Excluded, Inconclusive };
  std::string target;
  Kind verdict = Kind::Inconclusive;
  std::map<CycleType, std::size_t> sampled;
  std::size_t good = 0, bad = 0;
  std::vector<CycleType> outside;  // sampled types missing from the target
  // Alternative name -> sampled types it cannot contain.
  std::vector<std::pair<std::string, std::vector<CycleType>>> alternatives;

  static std::string name(Kind k) {
    switch (k) {
      case Kind::Consistent:
        return "consistent";
      case Kind::Excluded:
        return "excluded";
      case Kind::Inconclusive:
        break;
    }
    return "inconclusive";
  }
};

// Partitions of n (all of them, or only the even permutations').
inline CycleTypeSet symmetric_cycle_types(std::size_t n, bool even_only) {
  CycleTypeSet out;
  std::vector<std::size_t> parts;
  auto rec = [&](auto&& self, std::size_t left, std::size_t max_part) -> void {
    if (left == 0) {
      CycleType ct = CycleType::from_lengths(parts);
      if (!even_only || ct.index() % 2 == 0) out.types.insert(ct);
      return;
    }
    for (std::size_t k = std::min(left, max_part); k >= 1; --k) {
      parts.push_back(k);
      self(self, left - k, k);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// Type sets are cached because the larger groups take a while to enumerate.
// Besides catalog names, "S<n>" and "A<n>" name the full symmetric and
// alternating groups.
inline const CycleTypeSet& catalog_cycle_types(const std::string& name) {
  static std::map<std::string, CycleTypeSet> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  if (name.size() >= 2 && (name[0] == 'S' || name[0] == 'A') &&
      name.find_first_not_of("0123456789", 1) == std::string::npos) {
    std::size_t n = std::stoul(name.substr(1));
    return cache.emplace(name, symmetric_cycle_types(n, name[0] == 'A')).first->second;
  }
  CatalogGroup cg = make_group(name);
  return cache.emplace(name, all_cycle_types(cg.group)).first->second;
}

// Alternatives: "A_n", "S_n" or catalog names.
inline GroupVerdict dedekind_verdict(const BiPoly& f, const std::string& target, const DedekindGrid& grid,
                                     const std::vector<std::string>& alternatives = {}) {
  GroupVerdict v;
  v.target = target;
  const CycleTypeSet& types = catalog_cycle_types(target);
  if (types.types.empty() || types.types.begin()->degree() != static_cast<std::size_t>(f.deg_x())) {
    throw VerifyError("degree of " + target + " does not match deg_x f = " + std::to_string(f.deg_x()));
  }
  for (const auto& t0 : grid.t_values) {
    for (auto p : grid.primes) {
      auto ct = frobenius_type(f, t0, p);
      if (!ct) {
        ++v.bad;
        continue;
      }
      ++v.good;
      ++v.sampled[*ct];
    }
  }
  if (v.good == 0) throw VerifyError("all reductions were bad");
  for (const auto& [ct, count] : v.sampled) {
    if (!types.contains(ct)) v.outside.push_back(ct);
  }
  if (!v.outside.empty()) {
    v.verdict = GroupVerdict::Kind::Excluded;
  } else {
    v.verdict = types.certified ? GroupVerdict::Kind::Consistent : GroupVerdict::Kind::Inconclusive;
  }
  for (const auto& alt : alternatives) {
    std::vector<CycleType> missing;
    for (const auto& [ct, count] : v.sampled) {
      bool in;
      if (alt == "S_n") {
        in = true;
      } else if (alt == "A_n") {
        in = ct.index() % 2 == 0;
      } else {
        in = catalog_cycle_types(alt).contains(ct);
      }
      if (!in) missing.push_back(ct);
    }
    v.alternatives.emplace_back(alt, std::move(missing));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Totally real windows

struct RealWindow {
  std::optional<mpq_class> lo, hi;  // nullopt = infinite; rational inner bounds
  mpq_class sample;                 // the t0 that was tested

  double lo_d() const { return lo ? lo->get_d() : -HUGE_VAL; }
  double hi_d() const { return hi ? hi->get_d() : HUGE_VAL; }
  bool contains(double a, double b) const { return lo_d() <= a && b <= hi_d(); }
};

struct WindowReport {
  std::vector<RootInterval> branch_points;  // real finite branch points, sorted
  std::vector<RealWindow> windows;          // complementary intervals that passed
  std::size_t intervals_tested = 0;
};

// Isolating intervals are refined to relative width `rel_width` before the
// windows are reported.
inline WindowReport totally_real_windows(const BiPoly& f, const RamificationReport& rep,
                                         double rel_width = 1e-12, int samples_per_gap = 1) {
  WindowReport out;
  QPoly locus = QPoly::constant(1);
  for (const auto& b : rep.branches) {
    if (!b.at_infinity) locus = locus * b.locus;
  }
  const int n = f.deg_x();
  auto roots = real_root_isolate(locus);
  for (auto& r : roots) r = refine_relative(locus, r, mpq_class(rel_width));
  out.branch_points = roots;
  const QPoly lc = f.lc_x();
  auto passes = [&](const mpq_class& t0) {
    QPoly g = f.at(t0);
    return g.degree() == n && totally_real(g);
  };
  // Sample points avoid the finitely many t0 where the x-degree drops.
  auto nudge = [&](mpq_class t0, const mpq_class& step) {
    while (lc.eval(t0) == 0) t0 += step;
    return t0;
  };
  const std::size_t gaps = roots.size() + 1;
  for (std::size_t i = 0; i < gaps; ++i) {
    std::optional<mpq_class> lo, hi;
    if (i > 0) lo = roots[i - 1].hi;
    if (i < roots.size()) hi = roots[i].lo;
    std::vector<mpq_class> ts;
    for (int k = 1; k <= samples_per_gap; ++k) {
      mpq_class frac(k, samples_per_gap + 1);
      if (lo && hi) {
        mpq_class len = *hi - *lo;
        ts.push_back(nudge(*lo + len * frac, len / mpq_class(7 * (samples_per_gap + 1))));
      } else if (lo) {
        ts.push_back(nudge(*lo + mpq_class(k) * (abs(*lo) + 1), mpq_class(1, 3)));
      } else if (hi) {
        ts.push_back(nudge(*hi - mpq_class(k) * (abs(*hi) + 1), mpq_class(-1, 3)));
      } else {
        ts.push_back(nudge(mpq_class(k), mpq_class(1, 3)));
      }
    }
    ++out.intervals_tested;
    bool ok = true;
    for (const auto& t0 : ts) ok = ok && passes(t0);
    if (ok) out.windows.push_back({lo, hi, ts.front()});
  }
  return out;
}

}  // namespace hurwitz
