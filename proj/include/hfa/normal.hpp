#pragma once

namespace hfa {

// Standard normal CDF. Absolute error <= 1e-10 over |x| <= 8 (in practice
// a few ulp, via the complementary error function).
double normal_cdf(double x);

// Standard normal density.
double normal_pdf(double x);

// Inverse CDF. Requires p in (0, 1); rational initial estimate plus one
// Halley refinement, so normal_quantile(normal_cdf(x)) = x to 1e-8 over
// |x| <= 6. Throws Error(Argument) outside (0, 1).
double normal_quantile(double p);

// Upper alpha/2 quantile z_{alpha/2}, the two-sided critical value.
double z_critical(double alpha);

}  // namespace hfa
