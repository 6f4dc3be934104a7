#include "cqed/angular.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cqed {

AngularMomentum AngularMomentum::from_twice(int twice_value) {
  if (twice_value < 0)
    throw std::invalid_argument("angular momentum must be non-negative");
  return AngularMomentum(twice_value);
}

namespace {

// Factorials of n/1 for n <= 40 in extended precision; the largest index a
// j <= 6 symbol can request is (j1+j2+j4+j5)+1 = 25.
constexpr int kMaxFact = 40;

const std::array<long double, kMaxFact + 1>& factorials() {
  static const auto table = [] {
    std::array<long double, kMaxFact + 1> f{};
    f[0] = 1.0L;
    for (int i = 1; i <= kMaxFact; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

long double fact2(int twice_n) {
  // twice_n is an even non-negative integer wherever callers evaluate it
  if (twice_n / 2 > kMaxFact)
    throw std::invalid_argument("angular momentum too large for this table");
  return factorials()[twice_n / 2];
}

bool triangle_ok(int ta, int tb, int tc) {
  if ((ta + tb + tc) % 2 != 0) return false;
  return tc <= ta + tb && tc >= std::abs(ta - tb);
}

void check_parity(int two_j, int two_m) {
  if (((two_j + two_m) & 1) != 0)
    throw std::invalid_argument(
        "j and m must both be integer or both half-integer");
}

}  // namespace

double wigner3j(AngularMomentum j1, AngularMomentum j2, AngularMomentum j3,
                int two_m1, int two_m2, int two_m3) {
  const int tj1 = j1.twice(), tj2 = j2.twice(), tj3 = j3.twice();
  check_parity(tj1, two_m1);
  check_parity(tj2, two_m2);
  check_parity(tj3, two_m3);

  if (two_m1 + two_m2 + two_m3 != 0) return 0.0;
  if (!triangle_ok(tj1, tj2, tj3)) return 0.0;
  if (std::abs(two_m1) > tj1 || std::abs(two_m2) > tj2 ||
      std::abs(two_m3) > tj3)
    return 0.0;

  // Racah sum, all arguments below are twice-values of non-negative integers.
  const int t1 = tj1 + tj2 - tj3;
  const int t2 = tj1 - tj2 + tj3;
  const int t3 = -tj1 + tj2 + tj3;
  const long double delta =
      fact2(t1) * fact2(t2) * fact2(t3) / fact2(tj1 + tj2 + tj3 + 2);

  const long double pre =
      std::sqrt(delta * fact2(tj1 + two_m1) * fact2(tj1 - two_m1) *
                fact2(tj2 + two_m2) * fact2(tj2 - two_m2) *
                fact2(tj3 + two_m3) * fact2(tj3 - two_m3));

  const int ka = tj3 - tj2 + two_m1;  // may be negative; bounds k below
  const int kb = tj3 - tj1 - two_m2;
  const int kmin = std::max({0, -ka, -kb});
  const int kmax = std::min({t1, tj1 - two_m1, tj2 + two_m2});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; k += 2) {
    const long double term =
        fact2(k) * fact2(t1 - k) * fact2(tj1 - two_m1 - k) *
        fact2(tj2 + two_m2 - k) * fact2(ka + k) * fact2(kb + k);
    sum += (((k / 2) % 2) ? -1.0L : 1.0L) / term;
  }

  const int phase_twice = tj1 - tj2 - two_m3;  // even by the m-sum rule
  const long double phase = ((phase_twice / 2) % 2) ? -1.0L : 1.0L;
  return static_cast<double>(phase * pre * sum);
}

double wigner6j(AngularMomentum j1, AngularMomentum j2, AngularMomentum j3,
                AngularMomentum j4, AngularMomentum j5, AngularMomentum j6) {
  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int d = j4.twice(), e = j5.twice(), f = j6.twice();

  if (!triangle_ok(a, b, c) || !triangle_ok(d, e, c) ||
      !triangle_ok(a, e, f) || !triangle_ok(d, b, f))
    return 0.0;

  auto delta = [](int x, int y, int z) {
    return fact2(x + y - z) * fact2(x - y + z) * fact2(-x + y + z) /
           fact2(x + y + z + 2);
  };
  const long double pre = std::sqrt(delta(a, b, c) * delta(d, e, c) *
                                    delta(a, e, f) * delta(d, b, f));

  const int alpha1 = a + b + c, alpha2 = d + e + c, alpha3 = a + e + f,
            alpha4 = d + b + f;
  const int beta1 = a + b + d + e, beta2 = b + c + e + f, beta3 = a + c + d + f;

  const int tmin = std::max({alpha1, alpha2, alpha3, alpha4});
  const int tmax = std::min({beta1, beta2, beta3});

  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; t += 2) {
    const long double num = fact2(t + 2);
    const long double den = fact2(t - alpha1) * fact2(t - alpha2) *
                            fact2(t - alpha3) * fact2(t - alpha4) *
                            fact2(beta1 - t) * fact2(beta2 - t) *
                            fact2(beta3 - t);
    sum += (((t / 2) % 2) ? -1.0L : 1.0L) * num / den;
  }
  return static_cast<double>(pre * sum);
}

}  // namespace cqed
