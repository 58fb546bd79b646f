#pragma once

// Discriminant-based checks on univariate polynomials: square discriminant
// (Galois group inside A_n) and square cofactor after dividing by a target.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/resultant.hpp"
#include "hurwitz/upoly.hpp"

namespace hurwitz {

inline bool is_rational_square(const mpq_class& q) {
  if (sgn(q) < 0) return false;
  return mpz_perfect_square_p(q.get_num_mpz_t()) != 0 && mpz_perfect_square_p(q.get_den_mpz_t()) != 0;
}

inline bool disc_square_test(const QPoly& f) {
  mpq_class d = discriminant(f);
  if (d == 0) throw PolyError("disc_square_test needs a squarefree polynomial");
  return is_rational_square(d);
}

// Prime factors below `bound` with exponents; `rest` receives the unfactored part.
inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(mpz_class n, std::uint64_t bound,
                                                                    mpz_class& rest) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  n = abs(n);
  for (std::uint64_t p = 2; p < bound && n > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    out.emplace_back(p, e);
  }
  rest = n;
  return out;
}

struct CofactorReport {
  mpz_class discriminant;
  bool divides = false;
  bool square = false;
  mpz_class cofactor_root;  // valid when square
  bool unfactored_probable_prime = false;
  // Small primes (below the trial bound) dividing disc to an odd power.
  std::vector<std::uint64_t> odd_small_primes;
  mpz_class unfactored;  // part of |disc| left after trial division
};

// disc(f) / target is the square of an integer?
inline CofactorReport disc_cofactor_check(const QPoly& f, const mpz_class& target,
                                          std::uint64_t trial_bound = 1000000) {
  CofactorReport r;
  mpq_class d = discriminant(f);
  if (d.get_den() != 1) throw PolyError("disc_cofactor_check expects an integral polynomial");
  r.discriminant = d.get_num();
  if (target == 0) throw PolyError("zero target");
  r.divides = mpz_divisible_p(r.discriminant.get_mpz_t(), target.get_mpz_t()) != 0;
  if (!r.divides) throw PolyError("target does not divide the discriminant");
  mpz_class c = r.discriminant / target;
  if (sgn(c) >= 0 && mpz_perfect_square_p(c.get_mpz_t())) {
    r.square = true;
    mpz_sqrt(r.cofactor_root.get_mpz_t(), c.get_mpz_t());
  }
  for (const auto& [p, e] : trial_factor(r.discriminant, trial_bound, r.unfactored)) {
    if (e % 2 == 1) r.odd_small_primes.push_back(p);
  }
  r.unfactored_probable_prime = r.unfactored > 1 && mpz_probab_prime_p(r.unfactored.get_mpz_t(), 30) != 0;
  return r;
}

}  // namespace hurwitz
