#pragma once

namespace heavytail::special {

/// log Γ(x) for x > 0, Lanczos-type approximation (relative error < 1e-13).
double log_gamma(double x);

/// Γ(x) for x > 0.
double gamma_fn(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a,x)/Γ(a), a > 0, x >= 0.
/// Series for x < a+1, continued fraction otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

} // namespace heavytail::special
