#ifndef JIGSAW_VERIFICATION_HPP
#define JIGSAW_VERIFICATION_HPP

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "jigsaw/analysis.hpp"
#include "jigsaw/dist.hpp"

namespace jigsaw {

struct CheckResult {
  std::string group;  // "identity", "domination", "bottleneck"
  std::string name;
  bool pass = false;
  std::string detail;
};

// The exact-identity / domination / root-identity suite. Tolerances are
// pinned here: identities are exact rationals, dominations use 1e-12 tails,
// the root identity is verified to 1e-9.
inline std::vector<CheckResult> run_verification_suite() {
  std::vector<CheckResult> out;
  auto add = [&](std::string group, std::string name, bool pass, std::string detail = "") {
    out.push_back({std::move(group), std::move(name), pass, std::move(detail)});
  };

  // partial sums, exact for j = 3..8, m = j..200
  {
    bool all = true;
    for (int j = 3; j <= 8 && all; ++j)
      for (int m = j; m <= 200; ++m)
        if (!partial_sum_identity_check(j, m).equal) {
          all = false;
          break;
        }
    add("identity", "partial sums match closed form (j=3..8, m<=200)", all);
  }
  {
    const bool a = infinite_sum_closed_form(3) == Rational(1, 4);
    const bool b = infinite_sum_closed_form(4) == Rational(1, 60);
    add("identity", "series limits: 1/4 at j=3, 1/60 at j=4", a && b);
  }
  {
    bool all = true;
    for (int j = 3; j <= 12; ++j) all = all && infinite_sum_upper_bound_holds(j);
    add("identity", "series limit below e^2 j!/(j-2) (e/2j)^(2j-2)", all);
  }
  {
    bool all = chu_vandermonde_check(2, 2, 2) && chu_vandermonde_check(-4, 6, 3);
    for (long long a = -6; a <= 6 && all; ++a)
      for (long long b = -4; b <= 8 && all; ++b)
        for (unsigned c = 0; c <= 6 && all; ++c) all = chu_vandermonde_check(a, b, c);
    add("identity", "Chu-Vandermonde on grid incl. negative a", all);
  }
  {
    bool all = true;
    for (unsigned n = 1; n <= 100; ++n) all = all && stirling_bounds_check(n);
    add("identity", "factorial bounds for n = 1..100", all);
  }

  // stochastic domination
  {
    bool all = true;
    std::ostringstream fails;
    for (std::uint64_t N : {10, 20, 50})
      for (double p : {0.05, 0.2})
        for (double theta : {0.3, 0.6}) {
          const auto x = make_binomial(N, p);
          const double limit = theta * static_cast<double>(N);
          for (std::uint64_t r = 0; static_cast<double>(r) < limit; ++r) {
            const auto y = make_truncated_poisson((1.0 - theta) * N * p, r);
            if (!dominates(x, y)) {
              all = false;
              fails << " (N=" << N << ",p=" << p << ",theta=" << theta << ",r=" << r << ")";
            }
          }
        }
    add("domination", "binomial dominates cutoff Poisson on hypothesis grid", all,
        fails.str());
  }
  {
    bool all = true;
    for (double lambda : {0.5, 1.0, 2.0})
      for (double mu : {0.5, 1.0, 2.0})
        for (std::uint64_t r : {2, 5, 10}) {
          const auto sum = convolve(make_truncated_poisson(lambda, r),
                                    make_truncated_poisson(mu, r));
          const auto joint = make_truncated_poisson(lambda + mu, r);
          all = all && dominates(sum, joint);
        }
    add("domination", "sum of cutoff Poissons dominates cutoff Poisson of sum", all);
  }
  {
    bool all = true;
    for (double lambda : {0.1, 1.0, 10.0})
      for (std::uint64_t r : {1, 5, 50}) {
        const BigFloat total = make_truncated_poisson(lambda, r).total_mass();
        all = all && abs(total - 1) < BigFloat("1e-12");
      }
    add("domination", "cutoff Poisson masses normalize to 1", all);
  }

  // bottleneck root identity: N = 1/(4 ln n) forces x = 2 ln n
  {
    bool all = true;
    std::ostringstream detail;
    for (double n : {1e3, 1e4, 1e6}) {
      const BigFloat nn(n);
      const BigFloat N = 1 / (4 * log(nn));
      const auto root = bottleneck_root(N, nn);
      const BigFloat expected = 2 * log(nn);
      const BigFloat err = abs(root.x - expected);
      const bool ok = root.found && err < BigFloat("1e-9") && root.residual < BigFloat("1e-12");
      all = all && ok;
      detail << " n=" << n << ": |x - 2ln n| = " << static_cast<double>(err);
    }
    add("bottleneck", "root at N = 1/(4 ln n) equals 2 ln n (1e-9)", all, detail.str());
  }
  {
    const double n = std::exp(10.0);
    const auto root = bottleneck_root(0.5 / 40.0, n);
    const bool ok = root.found && root.residual < BigFloat("1e-12") && root.x < 20;
    add("bottleneck", "subcritical root exists below 2 ln n", ok);
  }
  {
    // smallest root grows with N below the threshold
    bool all = true;
    double prev = 0.0;
    const double n = 1e4;
    const double crit = 1.0 / (4.0 * std::log(n));
    for (double f : {0.2, 0.4, 0.6, 0.8, 0.95}) {
      const auto root = bottleneck_root(f * crit, n);
      all = all && root.found && static_cast<double>(root.x) > prev;
      prev = static_cast<double>(root.x);
    }
    add("bottleneck", "smallest root monotone in N below threshold", all);
  }

  return out;
}

}  // namespace jigsaw

#endif
