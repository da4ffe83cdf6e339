#pragma once

// Uniform-expansion kernels at z = x / nu with gap = 1 - z supplied
// separately, for callers that know the distance to the turning point more
// accurately than z itself.
namespace unruh::specfun::detail {

double besselK_uniform(double nu, double z, double gap);
double KI_product_uniform(double nu, double z, double gap);
double K_squared_average(double nu, double z, double gap);
double airy_variable(double nu, double z, double gap);

}  // namespace unruh::specfun::detail
