#pragma once

namespace unruh::specfun::detail {

// z -> (zeta, phi) of the Airy-type uniform expansion, with
// phi = (zeta / (1 - z^2))^{1/4}. zeta > 0 for z < 1.
struct AiryMap {
  double zeta;
  double phi;
};

AiryMap airy_map(double z);
// Same, with gap = 1 - z supplied exactly.
AiryMap airy_map(double z, double gap);

// Coefficient sums  sum (-1)^k A_k(z) / nu^{2k}  and  sum (-1)^k B_k(z) / nu^{2k},
// k = 0..4.
struct UniformSums {
  double a;
  double b;
};

UniformSums uniform_sums(double nu, double z);

// Ai(-t)^2 + Bi(-t)^2.
double airy_modulus_squared(double t);

// M^2 = Ai^2 + Bi^2, its t-derivative, and N^2 = Ai'^2 + Bi'^2, all at -t.
struct AiryModuli {
  double m2;
  double dm2_dt;
  double n2;
};

AiryModuli airy_moduli(double t);

}  // namespace unruh::specfun::detail
