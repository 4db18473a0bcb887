#include "heavytail/constants.hpp"

#include <cmath>

#include "heavytail/densities.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::LowBeta: return "LowBeta";
        case Branch::HighBeta: return "HighBeta";
        case Branch::Interior: return "Interior";
        case Branch::Boundary: return "Boundary";
    }
    return "?";
}

ConstantValue chernoff_rho(double beta) {
    require(beta > 0.5, ErrorCode::ParameterOutOfRange, "chernoff_rho: requires beta > 1/2");
    if (beta <= 1.5) {
        double d = beta - 0.5;
        return {d * d, Branch::LowBeta, "1/2 < beta <= 3/2"};
    }
    return {2.0 * (beta - 1.0), Branch::HighBeta, "beta > 3/2"};
}

ConstantValue chernoff_gamma(double kappa) {
    require(kappa > 0.0, ErrorCode::ParameterOutOfRange, "chernoff_gamma: requires kappa > 0");
    if (kappa <= 2.0) return {kappa * kappa / 4.0, Branch::LowBeta, "0 < kappa <= 2"};
    return {kappa - 1.0, Branch::HighBeta, "kappa > 2"};
}

AlphaOptimum optimize_alpha_chernoff(double beta, ChernoffFamily family) {
    require(beta > 0.5, ErrorCode::ParameterOutOfRange,
            "optimize_alpha_chernoff: requires beta > 1/2");
    double alpha_star = (family == ChernoffFamily::Cauchy) ? beta / 2.0 + 0.25
                                                           : (2.0 * beta + 1.0) / 4.0;
    double alpha_max = std::min(1.0, alpha_star);
    return {alpha_max, chernoff_rho(beta).value};
}

namespace {

// (2b - a) * ((a-1)/(2-a))^(3-2a), evaluated in extended precision: the
// exponent passes through zero at a = 3/2 and the base degenerates there.
double lsi_low_branch_cauchy(double beta, double alpha) {
    long double a = alpha, b = beta;
    long double base = (a - 1.0L) / (2.0L - a);
    long double v = (2.0L * b - a) * std::exp((3.0L - 2.0L * a) * std::log(base));
    return static_cast<double>(v);
}

// 1/2 ((2b-a)/(3/2-a))^(3-2a) (m(2-a))^(2a-2) (a-1)^(5-4a)
double lsi_low_branch_invgamma(double two_beta_minus_alpha, double alpha, double m) {
    long double a = alpha, num = two_beta_minus_alpha, mm = m;
    long double t1 = (3.0L - 2.0L * a) * std::log(num / (1.5L - a));
    long double t2 = (2.0L * a - 2.0L) * std::log(mm * (2.0L - a));
    long double t3 = (5.0L - 4.0L * a) * std::log(a - 1.0L);
    return static_cast<double>(0.5L * std::exp(t1 + t2 + t3));
}

} // namespace

ConstantValue lsi_rho_cauchy(double beta, double alpha) {
    require(beta > 1.0, ErrorCode::ParameterOutOfRange, "lsi_rho_cauchy: requires beta > 1");
    require(alpha > 1.0 && alpha < beta, ErrorCode::ParameterOutOfRange,
            "lsi_rho_cauchy: requires 1 < alpha < beta");
    if (alpha < 1.5)
        return {lsi_low_branch_cauchy(beta, alpha), Branch::Interior, "1 < alpha < 3/2"};
    require(beta > 1.5, ErrorCode::ParameterOutOfRange,
            "lsi_rho_cauchy: the branch 3/2 <= alpha < beta requires beta > 3/2");
    return {2.0 * beta - alpha, Branch::Boundary, "3/2 <= alpha < beta, beta > 3/2"};
}

ConstantValue lsi_rho_invgamma(double beta, double alpha, double m) {
    require(m > 0.0, ErrorCode::ParameterOutOfRange, "lsi_rho_invgamma: requires m > 0");
    require(alpha > 1.0 && alpha <= 1.5, ErrorCode::ParameterOutOfRange,
            "lsi_rho_invgamma: requires 1 < alpha <= 3/2");
    require(alpha < beta, ErrorCode::ParameterOutOfRange,
            "lsi_rho_invgamma: requires alpha < beta");
    if (alpha == 1.5) {
        require(beta > 1.5, ErrorCode::ParameterOutOfRange,
                "lsi_rho_invgamma: alpha = 3/2 requires beta > 3/2");
        return {m / 2.0, Branch::Boundary, "alpha = 3/2, beta > 3/2"};
    }
    return {lsi_low_branch_invgamma(2.0 * beta - alpha, alpha, m), Branch::Interior,
            "1 < alpha < 3/2, alpha < beta"};
}

ConstantValue lsi_rho_invgamma_std(double kappa, double alpha, double m) {
    require(m > 0.0, ErrorCode::ParameterOutOfRange, "lsi_rho_invgamma_std: requires m > 0");
    require(alpha > 1.0 && alpha <= 1.5, ErrorCode::ParameterOutOfRange,
            "lsi_rho_invgamma_std: requires 1 < alpha <= 3/2");
    require(kappa + 1.0 > 2.0 * alpha, ErrorCode::ParameterOutOfRange,
            "lsi_rho_invgamma_std: requires kappa > 2 alpha - 1");
    if (alpha == 1.5) {
        require(kappa > 2.0, ErrorCode::ParameterOutOfRange,
                "lsi_rho_invgamma_std: alpha = 3/2 requires kappa > 2");
        return {m / 2.0, Branch::Boundary, "alpha = 3/2, kappa > 2"};
    }
    return {lsi_low_branch_invgamma(kappa + 1.0 - alpha, alpha, m), Branch::Interior,
            "1 < alpha < 3/2"};
}

ConstantValue bobkov_ledoux_prefactor(double beta) {
    require(beta > 1.0, ErrorCode::ParameterOutOfRange,
            "bobkov_ledoux_prefactor: requires beta > 1");
    return {1.0 / (beta - 1.0), Branch::Interior,
            "beta > 1; gradient-log form carries 1/(4(beta-1))"};
}

double bobkov_ledoux_log_form_constant(double beta) {
    require(beta > 1.0, ErrorCode::ParameterOutOfRange,
            "bobkov_ledoux_log_form_constant: requires beta > 1");
    return 1.0 / (4.0 * (beta - 1.0));
}

ConstantValue wirtinger_D(double beta, double m) {
    DensityModel h = DensityModel::inverse_gamma_bm(beta, m);
    double med = h.median();
    double value = 1.0 / (med * h.pdf(med));
    require(value > 0.0 && std::isfinite(value), ErrorCode::QuadratureFailure,
            "wirtinger_D: degenerate median density value");
    return {value, Branch::Interior, "beta > 1/2, m > 0"};
}

} // namespace heavytail
