#ifndef JIGSAW_ANALYSIS_HPP
#define JIGSAW_ANALYSIS_HPP

#include <boost/math/constants/constants.hpp>
#include <cstdint>
#include <optional>

#include "jigsaw/errors.hpp"
#include "jigsaw/precise.hpp"

namespace jigsaw {

struct IdentityCheck {
  bool equal = false;
  Rational lhs;
  Rational rhs;
};

// Checks sum_{i=j}^{m} 1/((i+1)(i+2)...(i+j-1)) against the closed form
// (1/(j-2)!) * sum_{l=0}^{j-3} (-1)^l C(j-3,l) (1/(j+1+l) - 1/(m+2+l)),
// both sides in exact rationals.
inline IdentityCheck partial_sum_identity_check(int j, int m) {
  if (j < 3) throw ParameterError("partial_sum_identity_check: j must be at least 3");
  if (m < j) throw ParameterError("partial_sum_identity_check: m must be at least j");

  IdentityCheck out;
  for (int i = j; i <= m; ++i) {
    Rational prod = 1;
    for (int f = i + 1; f <= i + j - 1; ++f) prod *= f;
    out.lhs += 1 / prod;
  }
  Rational s = 0;
  for (int l = 0; l <= j - 3; ++l) {
    const Rational term = Rational(binomial_int(j - 3, l)) *
                          (Rational(1, j + 1 + l) - Rational(1, m + 2 + l));
    s += (l % 2 == 0) ? term : -term;
  }
  out.rhs = s / Rational(factorial_int(j - 2));
  out.equal = out.lhs == out.rhs;
  return out;
}

// The full series sums to j! / ((j-2) (2j-2)!).
inline Rational infinite_sum_closed_form(int j) {
  if (j < 3) throw ParameterError("infinite_sum_closed_form: j must be at least 3");
  return Rational(factorial_int(j)) / (Rational(j - 2) * Rational(factorial_int(2 * j - 2)));
}

// ... and is at most e^2 * (j!/(j-2)) * (e/(2j))^{2j-2}.
inline bool infinite_sum_upper_bound_holds(int j) {
  const BigFloat closed = to_bigfloat(infinite_sum_closed_form(j));
  const BigFloat e = exp(BigFloat(1));
  const BigFloat bound = e * e * BigFloat(factorial_int(j)) / BigFloat(j - 2) *
                         pow(e / (2 * BigFloat(j)), 2 * j - 2);
  return closed <= bound;
}

// Chu-Vandermonde: C(a+b, c) = sum_l C(a,l) C(b,c-l), with the generalized
// binomial C(a,l) = a(a-1)...(a-l+1)/l! so negative upper arguments work.
inline bool chu_vandermonde_check(long long a, long long b, unsigned c) {
  Rational rhs = 0;
  for (unsigned l = 0; l <= c; ++l)
    rhs += binomial_generalized(a, l) * binomial_generalized(b, c - l);
  return binomial_generalized(a + b, c) == rhs;
}

// (n/e)^n <= sqrt(2 pi n) (n/e)^n <= n! <= e sqrt(n) (n/e)^n
inline bool stirling_bounds_check(unsigned n) {
  if (n < 1) throw ParameterError("stirling_bounds_check: n must be positive");
  const BigFloat e = exp(BigFloat(1));
  const BigFloat core = pow(BigFloat(n) / e, static_cast<int>(n));
  const BigFloat lower = sqrt(2 * boost::math::constants::pi<BigFloat>() * BigFloat(n)) * core;
  const BigFloat upper = e * sqrt(BigFloat(n)) * core;
  const BigFloat fact(factorial_int(n));
  return core <= lower && lower <= fact && fact <= upper;
}

struct BottleneckRoot {
  bool found = false;
  BigFloat x;
  BigFloat residual;  // |2xN e^{-xN} - n^{-1/x}| at the returned x
};

// Smallest positive solution of 2xN e^{-xN} = n^{-1/x}. Works on
// F(x) = ln(2Nx) - Nx + ln(n)/x, which has the same roots but no
// under/overflow; F -> +inf as x -> 0+ and -> -inf as x -> inf, so the first
// sign change on a geometric grid brackets the smallest root. Evaluation is
// in 512-bit floats: at the critical N = 1/(4 ln n) the root is triple, and
// double precision cannot place it.
inline BottleneckRoot bottleneck_root(const BigFloat& N, const BigFloat& n,
                                      int grid_points = 4096, int bisect_iters = 200) {
  if (!(N > 0)) throw ParameterError("bottleneck_root: N must be positive");
  if (!(n > 1)) throw ParameterError("bottleneck_root: n must exceed 1");

  const BigFloat log_n = log(n);
  auto F = [&](const BigFloat& x) { return log(2 * N * x) - N * x + log_n / x; };

  const BigFloat x_hi = 4 * log_n;
  const BigFloat x_lo = x_hi * pow(BigFloat(2), -24);
  const BigFloat ratio = pow(x_hi / x_lo, BigFloat(1) / (grid_points - 1));

  BottleneckRoot out;
  BigFloat a = x_lo, fa = F(a);
  for (int i = 1; i < grid_points; ++i) {
    const BigFloat b = i + 1 == grid_points ? x_hi : a * ratio;
    const BigFloat fb = F(b);
    if (fa == 0 || (fa > 0) != (fb > 0)) {
      BigFloat lo = a, hi = b, flo = fa;
      if (fa == 0) hi = a;
      for (int it = 0; it < bisect_iters && lo < hi; ++it) {
        const BigFloat mid = (lo + hi) / 2;
        const BigFloat fm = F(mid);
        if (fm == 0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.found = true;
      out.x = (lo + hi) / 2;
      out.residual = abs(2 * out.x * N * exp(-out.x * N) - exp(-log_n / out.x));
      return out;
    }
    a = b;
    fa = fb;
  }
  return out;  // no sign change located
}

inline BottleneckRoot bottleneck_root(double N, double n, int grid_points = 4096,
                                      int bisect_iters = 200) {
  return bottleneck_root(BigFloat(N), BigFloat(n), grid_points, bisect_iters);
}

}  // namespace jigsaw

#endif
