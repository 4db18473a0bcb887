#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "heavytail/interval.hpp"

namespace heavytail {

enum class Family {
    CauchyType,          // C_b (1+x^2)^-b              on R,  b > 1/2
    SymmetricPolynomial, // c_b (1+|x|)^-2b             on R,  b > 1/2
    InverseGammaBM,      // C_{b,m} x^-2b e^{-m/x}      on R+, b > 1/2, m > 0
    InverseGammaStd,     // m^k/G(k) x^-(1+k) e^{-m/x}  on R+, k > 0,  m > 0
    GeneralizedGamma,    // ~ y^{(2b-a)/(a-1)} e^{-m(a-1)^{1/(a-1)} y^{1/(a-1)}} on R+
    GibbsPotential,      // ~ e^{-V(x)}                 on R
};

struct Moment {
    bool finite = true;
    double value = 0.0;
};

namespace detail {
struct CdfTable;
}

/// An immutable parameterized probability density on an open interval with
/// cached normalization; all evaluators are pure and thread-safe.
class DensityModel {
  public:
    static DensityModel cauchy(double beta);
    static DensityModel symmetric_polynomial(double beta);
    static DensityModel inverse_gamma_bm(double beta, double m);
    static DensityModel inverse_gamma_std(double kappa, double m);
    static DensityModel generalized_gamma(double beta, double alpha, double m);
    static DensityModel gibbs(std::function<double(double)> V,
                              std::function<double(double)> dV,
                              std::function<double(double)> d2V,
                              double tail_exponent = Interval::inf());
    /// V(x) = a x^4/4 + b x^2/2 with a >= 0, b > 0 (a = 0 gives a Gaussian).
    static DensityModel gibbs_quartic(double a, double b);

    /// Parse "family=cauchy beta=2.5" style key=value blocks.
    static DensityModel from_descriptor(const std::string& text);
    std::string descriptor() const;

    Family family() const { return family_; }
    const std::vector<double>& params() const { return params_; }
    double param(const std::string& name) const;
    Interval interval() const { return interval_; }

    double norm_constant() const;
    double log_norm_constant() const { return log_norm_; }

    double pdf(double x) const;
    double log_pdf(double x) const;
    /// d/dx log pdf, analytic per family.
    double dlog_pdf(double x) const;
    double cdf(double x) const;
    double median() const;
    double quantile(double p) const;
    Moment moment(int k) const;

    /// Polynomial tail decay exponent t (pdf ~ |x|^-t); +inf when the tail
    /// decays faster than any polynomial. E|X|^q < inf iff q < t - 1.
    double tail_exponent() const { return tail_exponent_; }
    bool symmetric() const;

    // Unnormalized kernel; exposed for the normalization cross-checks.
    double log_kernel(double x) const;

    // Gibbs potential access (GibbsPotential family only).
    double potential(double x) const;
    double potential_d1(double x) const;
    double potential_d2(double x) const;

  private:
    DensityModel() = default;
    void finalize(); // compute normalization, build cdf table when needed

    Family family_ = Family::CauchyType;
    std::vector<double> params_;
    Interval interval_;
    double log_norm_ = 0.0;
    double tail_exponent_ = 0.0;
    std::function<double(double)> V_, dV_, d2V_;
    std::shared_ptr<const detail::CdfTable> table_;
    double gibbs_a_ = -1.0, gibbs_b_ = -1.0; // quartic coefficients when applicable
};

} // namespace heavytail
