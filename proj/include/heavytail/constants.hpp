#pragma once

#include <string>

namespace heavytail {

enum class Branch { LowBeta, HighBeta, Interior, Boundary };

const char* branch_name(Branch b);

struct ConstantValue {
    double value = 0.0;
    Branch branch = Branch::Interior;
    std::string valid_range;
};

enum class ChernoffFamily { Cauchy, InverseGamma };

struct AlphaOptimum {
    double alpha_max = 0.0;
    double rho = 0.0;
};

/// Optimal Chernoff constant rho(beta): (beta-1/2)^2 on 1/2 < beta <= 3/2,
/// 2(beta-1) above.
ConstantValue chernoff_rho(double beta);

/// Optimal Chernoff constant gamma(kappa): kappa^2/4 on 0 < kappa <= 2,
/// kappa-1 above.
ConstantValue chernoff_gamma(double kappa);

/// Closed-form maximizer of the inner alpha-optimization together with the
/// attained constant (equal to chernoff_rho(beta)).
AlphaOptimum optimize_alpha_chernoff(double beta, ChernoffFamily family);

/// Log-Sobolev constant for Cauchy-type densities, 1 < alpha < beta.
ConstantValue lsi_rho_cauchy(double beta, double alpha);

/// Log-Sobolev constant for inverse Gamma densities, 1 < alpha <= 3/2,
/// alpha < beta (beta > 3/2 on the alpha = 3/2 branch).
ConstantValue lsi_rho_invgamma(double beta, double alpha, double m);

/// Same constant in the standard inverse Gamma parameterization
/// (kappa = 2 beta - 1; the alpha = 3/2 branch requires kappa > 2).
ConstantValue lsi_rho_invgamma_std(double kappa, double alpha, double m);

/// Bobkov–Ledoux prefactor 1/(beta-1) for the sqrt-form weighted LSI.
ConstantValue bobkov_ledoux_prefactor(double beta);

/// Constant of the equivalent gradient-log form, 1/(4(beta-1)).
double bobkov_ledoux_log_form_constant(double beta);

/// D(beta, m) = 1/(median * pdf(median)) for the inverse Gamma Wirtinger
/// inequality; the median is computed, not closed-form.
ConstantValue wirtinger_D(double beta, double m);

} // namespace heavytail
