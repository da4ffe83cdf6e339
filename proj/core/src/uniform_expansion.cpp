#include "uniform_expansion.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <complex>

namespace unruh::specfun::detail {
namespace {

#include "debye_polynomials.inc"
#include "uniform_coefficients.inc"

constexpr double kChebHalfWidth = 0.5;

double clenshaw(const double* c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = kChebDegree; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

std::complex<double> debye(int k, std::complex<double> p) {
  std::complex<double> acc = 0.0;
  for (int i = kDebyeMaxPower; i >= 0; --i) acc = acc * p + kDebye[k][i];
  return acc;
}

// A_k, B_k straight from the Debye polynomials; fine away from z = 1.
void direct_coefficients(double z, double zeta, double* a, double* b) {
  using C = std::complex<double>;
  C zh, q;
  if (zeta > 0) {
    zh = std::sqrt(zeta);
    q = std::sqrt((1.0 - z) * (1.0 + z));
  } else {
    zh = C(0.0, std::sqrt(-zeta));
    q = C(0.0, std::sqrt((z - 1.0) * (z + 1.0)));
  }
  const C p = 1.0 / q;
  const C w = 1.0 / (zh * zh * zh);
  for (int k = 0; k < 5; ++k) {
    C sa = 0.0, pw = 1.0;
    for (int j = 0; j <= 2 * k; ++j) {
      sa += std::pow(1.5, j) * kOlverV[j] * pw * debye(2 * k - j, p);
      pw *= w;
    }
    C sb = 0.0;
    pw = 1.0;
    for (int j = 0; j <= 2 * k + 1; ++j) {
      sb += std::pow(1.5, j) * kOlverU[j] * pw * debye(2 * k - j + 1, p);
      pw *= w;
    }
    a[k] = sa.real();
    b[k] = (-sb / zh).real();
  }
}

double series_g(double s2, bool alternating) {
  // sum_k (+-s^2)^k / (2k + 3)
  const double x = alternating ? -s2 : s2;
  double acc = 0.0, pw = 1.0;
  for (int k = 0; k < 16; ++k) {
    acc += pw / (2.0 * k + 3.0);
    pw *= x;
  }
  return acc;
}

}  // namespace

AiryMap airy_map(double z) { return airy_map(z, 1.0 - z); }

AiryMap airy_map(double z, double gap) {
  double g, r2;
  if (gap > 0.0) {
    r2 = gap * (2.0 - gap);
    const double s = std::sqrt(r2);
    if (s < 0.2) {
      g = series_g(r2, false);
    } else {
      const double at = z < 0.5 ? std::log((1.0 + s) / z) : std::atanh(s);
      g = (at - s) / (s * r2);
    }
  } else {
    r2 = -gap * (2.0 - gap);
    const double t = std::sqrt(r2);
    if (t < 0.2) {
      g = series_g(r2, true);
    } else {
      g = (t - std::atan(t)) / (t * r2);
    }
    r2 = -r2;
  }
  const double h = 1.5 * g;
  return {std::cbrt(h * h) * r2, std::pow(h, 1.0 / 6.0)};
}

UniformSums uniform_sums(double nu, double z) {
  double a[5], b[5];
  if (std::abs(z - 1.0) <= kChebHalfWidth) {
    const double x = (z - 1.0) / kChebHalfWidth;
    a[0] = 1.0;
    for (int k = 1; k < 5; ++k) a[k] = clenshaw(kChebCoefficients[k - 1], x);
    for (int k = 0; k < 5; ++k) b[k] = clenshaw(kChebCoefficients[4 + k], x);
  } else {
    direct_coefficients(z, airy_map(z).zeta, a, b);
  }
  const double inv2 = 1.0 / (nu * nu);
  UniformSums s{0.0, 0.0};
  for (int k = 4; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    s.a = s.a * inv2 + sign * a[k];
    s.b = s.b * inv2 + sign * b[k];
  }
  return s;
}

double airy_modulus_squared(double t) { return airy_moduli(t).m2; }

AiryModuli airy_moduli(double t) {
  if (t <= 30.0) {
    const double ai = boost::math::airy_ai(-t), bi = boost::math::airy_bi(-t);
    const double aip = boost::math::airy_ai_prime(-t), bip = boost::math::airy_bi_prime(-t);
    return {ai * ai + bi * bi, -2.0 * (ai * aip + bi * bip), aip * aip + bip * bip};
  }
  // c_k = [1*3*5*...*(6k-1)] / (k! 96^k); M^2 ~ sum c_k (-t)^{-3k} / (pi sqrt t) and
  // N^2 ~ sum c_k (1 + 6k) / (1 - 6k) (-t)^{-3k} sqrt(t) / pi.
  const double x = -1.0 / (t * t * t);
  constexpr double c[] = {1.0, 5.0 / 32.0, 1155.0 / 2048.0,
                          34459425.0 / 5308416.0, 316234143225.0 / 2038431744.0};
  double m = 0.0, dm = 0.0, n = 0.0;
  for (int k = 4; k >= 0; --k) {
    m = m * x + c[k];
    dm = dm * x + c[k] * (0.5 + 3.0 * k);
    n = n * x + c[k] * (1.0 + 6.0 * k) / (1.0 - 6.0 * k);
  }
  const double rt = std::sqrt(t);
  return {m / (M_PI * rt), -dm / (M_PI * rt * t), n * rt / M_PI};
}

}  // namespace unruh::specfun::detail
