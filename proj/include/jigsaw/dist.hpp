#ifndef JIGSAW_DIST_HPP
#define JIGSAW_DIST_HPP

#include <cstdint>
#include <vector>

#include "jigsaw/errors.hpp"
#include "jigsaw/precise.hpp"

namespace jigsaw {

namespace detail {

inline Rational rational_pow(Rational base, std::uint64_t e) {
  Rational out = 1;
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace detail

// Finite distribution on {0,...,max}. Binomials carry exact rational masses;
// Poisson-derived distributions carry 512-bit float masses. Mixed-backend
// comparisons fall back to floats.
class DiscreteDist {
public:
  static DiscreteDist exact(std::vector<Rational> mass) {
    DiscreteDist d;
    d.exact_ = true;
    d.qmass_ = std::move(mass);
    d.fmass_.reserve(d.qmass_.size());
    for (const auto& q : d.qmass_) d.fmass_.push_back(to_bigfloat(q));
    return d;
  }

  static DiscreteDist approx(std::vector<BigFloat> mass) {
    DiscreteDist d;
    d.exact_ = false;
    d.fmass_ = std::move(mass);
    return d;
  }

  bool is_exact() const { return exact_; }
  std::size_t max_value() const { return fmass_.empty() ? 0 : fmass_.size() - 1; }

  BigFloat mass(std::size_t t) const { return t < fmass_.size() ? fmass_[t] : BigFloat(0); }
  Rational exact_mass(std::size_t t) const {
    return exact_ && t < qmass_.size() ? qmass_[t] : Rational(0);
  }

  BigFloat total_mass() const {
    BigFloat s = 0;
    for (const auto& m : fmass_) s += m;
    return s;
  }

  // P[X <= t]
  BigFloat cdf(std::size_t t) const {
    BigFloat s = 0;
    for (std::size_t i = 0; i <= t && i < fmass_.size(); ++i) s += fmass_[i];
    return s;
  }

  // suffix sums: tails()[r] = P[X >= r], length max_value()+2
  std::vector<BigFloat> tails() const {
    std::vector<BigFloat> out(fmass_.size() + 1, BigFloat(0));
    for (std::size_t t = fmass_.size(); t-- > 0;) out[t] = out[t + 1] + fmass_[t];
    return out;
  }

  std::vector<Rational> exact_tails() const {
    std::vector<Rational> out(qmass_.size() + 1, Rational(0));
    for (std::size_t t = qmass_.size(); t-- > 0;) out[t] = out[t + 1] + qmass_[t];
    return out;
  }

private:
  bool exact_ = false;
  std::vector<Rational> qmass_;
  std::vector<BigFloat> fmass_;
};

inline DiscreteDist point_mass(std::size_t t) {
  std::vector<Rational> mass(t + 1, Rational(0));
  mass[t] = 1;
  return DiscreteDist::exact(std::move(mass));
}

// Bi(N, p) with exact rational masses (doubles are dyadic, so p converts
// exactly).
inline DiscreteDist make_binomial(std::uint64_t N, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("make_binomial: p outside [0,1]");
  if (p == 0.0) return point_mass(0);
  if (p == 1.0) return point_mass(N);
  const Rational pq(p);
  const Rational q = 1 - pq;
  std::vector<Rational> mass(N + 1);
  mass[0] = detail::rational_pow(q, N);
  const Rational ratio = pq / q;
  for (std::uint64_t k = 0; k < N; ++k)
    mass[k + 1] = mass[k] * Rational(N - k) / Rational(k + 1) * ratio;
  return DiscreteDist::exact(std::move(mass));
}

// Po(lambda), truncated where the remaining tail drops below 1e-60.
inline DiscreteDist make_poisson(double lambda) {
  if (!(lambda >= 0.0)) throw ParameterError("make_poisson: lambda must be non-negative");
  if (lambda == 0.0) return point_mass(0);
  const BigFloat lam(lambda);
  std::vector<BigFloat> mass;
  BigFloat m = exp(-lam);
  BigFloat cum = 0;
  const BigFloat stop = BigFloat(1) - BigFloat("1e-60");
  std::size_t t = 0;
  while (true) {
    mass.push_back(m);
    cum += m;
    if (cum >= stop && static_cast<double>(t) >= lambda) break;
    if (t > static_cast<std::size_t>(lambda) + 3000)
      throw CapacityError("make_poisson: support did not converge");
    ++t;
    m = m * lam / t;
  }
  return DiscreteDist::approx(std::move(mass));
}

// Cutoff transform Po_{<=r}(lambda): Poisson conditioned on {X <= r},
// renormalized; zero mass above r.
inline DiscreteDist make_truncated_poisson(double lambda, std::uint64_t r) {
  if (!(lambda >= 0.0))
    throw ParameterError("make_truncated_poisson: lambda must be non-negative");
  if (lambda == 0.0) return point_mass(0);
  const BigFloat lam(lambda);
  std::vector<BigFloat> mass(r + 1);
  mass[0] = exp(-lam);
  for (std::uint64_t t = 1; t <= r; ++t) mass[t] = mass[t - 1] * lam / t;
  BigFloat total = 0;
  for (const auto& m : mass) total += m;
  for (auto& m : mass) m /= total;
  return DiscreteDist::approx(std::move(mass));
}

// Stochastic domination x > y: P[X >= r] >= P[Y >= r] for all r, by
// exhaustive tail comparison over the union of supports. Exact when both
// sides are rational-backed; otherwise within `tol`.
inline bool dominates(const DiscreteDist& x, const DiscreteDist& y,
                      const BigFloat& tol = BigFloat("1e-12")) {
  const std::size_t top = std::max(x.max_value(), y.max_value()) + 1;
  if (x.is_exact() && y.is_exact()) {
    const auto tx = x.exact_tails();
    const auto ty = y.exact_tails();
    for (std::size_t r = 0; r <= top; ++r) {
      const Rational a = r < tx.size() ? tx[r] : Rational(0);
      const Rational b = r < ty.size() ? ty[r] : Rational(0);
      if (a < b) return false;
    }
    return true;
  }
  const auto tx = x.tails();
  const auto ty = y.tails();
  for (std::size_t r = 0; r <= top; ++r) {
    const BigFloat a = r < tx.size() ? tx[r] : BigFloat(0);
    const BigFloat b = r < ty.size() ? ty[r] : BigFloat(0);
    if (a < b - tol) return false;
  }
  return true;
}

inline DiscreteDist convolve(const DiscreteDist& x, const DiscreteDist& y) {
  const std::size_t nx = x.max_value(), ny = y.max_value();
  if (x.is_exact() && y.is_exact()) {
    std::vector<Rational> mass(nx + ny + 1, Rational(0));
    for (std::size_t i = 0; i <= nx; ++i)
      for (std::size_t j = 0; j <= ny; ++j) mass[i + j] += x.exact_mass(i) * y.exact_mass(j);
    return DiscreteDist::exact(std::move(mass));
  }
  std::vector<BigFloat> mass(nx + ny + 1, BigFloat(0));
  for (std::size_t i = 0; i <= nx; ++i)
    for (std::size_t j = 0; j <= ny; ++j) mass[i + j] += x.mass(i) * y.mass(j);
  return DiscreteDist::approx(std::move(mass));
}

}  // namespace jigsaw

#endif
