#pragma once

// Numerical local monodromy: the roots of f(t, x) are followed around a
// small circle centered at a complex point t0 and the induced permutation
// is returned. Used where the exact fiber reading meets a singular point
// that is not an ordinary node.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hurwitz/bipoly.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/upoly.hpp"

namespace hurwitz {

using cplx = std::complex<double>;

class MonodromyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All complex roots of a polynomial with complex coefficients (ascending).
inline std::vector<cplx> complex_roots(std::vector<cplx> c) {
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  if (es.info() != Eigen::Success) throw MonodromyError("eigenvalue solver failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  // one Newton polish per root
  for (auto& z : out) {
    cplx p = c[n], dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[i];
    }
    if (std::abs(dp) > 0) {
      cplx step = p / dp;
      if (std::abs(step) < 1e-3 * (1 + std::abs(z))) z -= step;
    }
  }
  return out;
}

inline std::vector<cplx> complex_roots(const QPoly& f) {
  std::vector<cplx> c;
  for (const auto& q : f.coeffs()) c.emplace_back(q.get_d(), 0.0);
  return complex_roots(std::move(c));
}

namespace detail {

struct FiberEvaluator {
  std::vector<std::vector<cplx>> rows;  // rows[j][k]: coefficient of t^j x^k
  int n = 0;
  explicit FiberEvaluator(const BiPoly& f) : n(f.deg_x()) {
    for (int j = 0; j <= f.deg_t(); ++j) {
      std::vector<cplx> r(static_cast<std::size_t>(n + 1));
      const QPoly& row = f.row(j);
      for (int k = 0; k <= row.degree(); ++k) {
        double d = row.coeff(k).get_d();
        if (!std::isfinite(d)) throw MonodromyError("coefficient out of double range");
        r[static_cast<std::size_t>(k)] = d;
      }
      rows.push_back(std::move(r));
    }
  }
  std::vector<cplx> at(cplx t) const {
    std::vector<cplx> c(static_cast<std::size_t>(n + 1), 0.0);
    for (std::size_t j = rows.size(); j-- > 0;) {
      for (std::size_t k = 0; k < c.size(); ++k) c[k] = c[k] * t + rows[j][k];
    }
    return c;
  }
};

// Matches old roots to new ones; empty result if the step was too large.
// Each root may move at most a quarter of the distance to its nearest
// neighbour, which keeps far-away roots from forcing tiny steps.
inline std::vector<std::size_t> match_roots(const std::vector<cplx>& from, const std::vector<cplx>& to) {
  std::vector<std::size_t> img(from.size());
  std::vector<bool> used(to.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    double local = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < from.size(); ++j) {
      if (j != i) local = std::min(local, std::abs(from[i] - from[j]));
    }
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < to.size(); ++j) {
      double d = std::abs(from[i] - to[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (used[best] || bd > 0.25 * local) return {};
    used[best] = true;
    img[i] = best;
  }
  return img;
}

}  // namespace detail

// Permutation of the roots of f(t, x) after one counterclockwise turn of
// t around t0 at the given radius. The circle must avoid branch points and
// points where the x-degree drops.
inline Permutation local_monodromy(const BiPoly& f, cplx t0, double radius, std::size_t max_steps = 1u << 20) {
  detail::FiberEvaluator ev(f);
  const std::size_t n = static_cast<std::size_t>(ev.n);
  auto roots_at = [&](double theta) {
    auto r = complex_roots(ev.at(t0 + radius * std::polar(1.0, theta)));
    if (r.size() != n) throw MonodromyError("x-degree drops on the monodromy circle");
    return r;
  };
  const double two_pi = 2 * std::acos(-1.0);
  std::vector<cplx> start = roots_at(0.0), cur = start;
  std::vector<std::size_t> track(n);  // track[i]: index in cur of the root that started at i
  for (std::size_t i = 0; i < n; ++i) track[i] = i;
  double theta = 0, step = two_pi / 64;
  std::size_t steps = 0;
  while (theta < two_pi) {
    double next = std::min(two_pi, theta + step);
    auto nr = next == two_pi ? start : roots_at(next);
    auto img = detail::match_roots(cur, nr);
    if (img.empty()) {
      step /= 2;
      if (++steps > max_steps || step < 1e-12) throw MonodromyError("root tracking did not converge");
      continue;
    }
    for (auto& t : track) t = img[t];
    cur = std::move(nr);
    theta = next;
    step *= 1.5;
  }
  std::vector<Point> images(track.begin(), track.end());
  return Permutation(std::move(images));
}

// Largest radius around t0 that keeps the given points outside the circle
// (a fixed fraction of the distance to the nearest one).
inline double safe_radius(cplx t0, const std::vector<cplx>& others, double fraction = 0.4) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& z : others) {
    double e = std::abs(z - t0);
    if (e > 1e-9 * (1 + std::abs(t0))) d = std::min(d, e);
  }
  if (!std::isfinite(d)) d = 1;
  return fraction * d;
}

}  // namespace hurwitz
