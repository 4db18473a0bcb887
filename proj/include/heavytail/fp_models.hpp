#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heavytail/densities.hpp"
#include "heavytail/interval.hpp"

namespace heavytail {

/// A Fokker–Planck model d_t f = d_xx(P f) + d_x(Q f) whose steady state
/// solves d_x(P f) + Q f = 0 on the interval.
struct FokkerPlanckModel {
    explicit FokkerPlanckModel(DensityModel steady) : steady_state(std::move(steady)) {}

    std::string id;
    std::function<double(double)> P, Pprime, Q, Qprime;
    Interval interval;
    DensityModel steady_state;
    std::map<std::string, double> params;

    /// Steady-state residual d_x(P f_inf) + Q f_inf at x, from analytic
    /// derivatives (P' f + P f dlog f + Q f).
    double steady_residual(double x) const;
};

/// Cauchy Chernoff family: P=(1+x^2)^a, Q=2 a l x (1+x^2)^(a-1), steady
/// state f_beta with beta = a(1+l). Theorem range: alpha in (1/2, 1].
FokkerPlanckModel cauchy_chernoff_model(double alpha, double lambda);

/// Underlying family without the Chernoff restriction (alpha > 1/2); the
/// log-Sobolev analysis uses alpha > 1 members.
FokkerPlanckModel cauchy_fp_family(double alpha, double lambda);

/// Inverse Gamma Chernoff family: P=x^(2a), Q=l(x - m/l)x^(2a-2), steady
/// state h_{beta,m} with 2 beta = 2 a + l. Theorem range: alpha in (1/2, 1].
FokkerPlanckModel invgamma_chernoff_model(double alpha, double lambda, double m);

/// Underlying family for alpha in (1/2, 3/2].
FokkerPlanckModel invgamma_fp_family(double alpha, double lambda, double m);

/// Wealth model: P=(s/2)x^(2+d), Q=l x^d (x-1); inverse Gamma steady state
/// with mu = 2 l / s and Pareto exponent 2 + d + mu.
FokkerPlanckModel wealth_model(double sigma, double lambda, double delta);

/// P = K(x) built from the cdf and median, Q = sign(x - median).
FokkerPlanckModel median_form_model(const DensityModel& model);

/// Unit diffusion with drift V' for a Gibbs density e^{-V} (Brascamp–Lieb
/// mode; V''>0 required for the weight).
FokkerPlanckModel gibbs_model(const DensityModel& gibbs_density);

/// P=1, Q=x with standard Gaussian steady state.
FokkerPlanckModel classical_ou_model();

FokkerPlanckModel fp_model_from_descriptor(const std::string& text);

struct WeightFunction {
    std::string id;
    std::function<double(double)> w;     // P/Q'
    std::function<double(double)> bound; // dominating closed-form bound, when the family has one
    bool has_bound = false;
};

/// w = P/Q'; requires drift admissibility.
WeightFunction chernoff_weight(const FokkerPlanckModel& model);

struct AdmissibilityReport {
    bool admissible = false;
    std::vector<double> violations; // sampled x with Q' <= 0
    std::string message;
};

/// Q' > 0 on a graded 10^4-point grid and boundary limits of Q carry the
/// required signs (tested at |x|=1e6 resp. x in {1e-8, 1e8}).
AdmissibilityReport drift_admissible(const FokkerPlanckModel& model);

/// Change of variables making the diffusion coefficient unity, together
/// with the transformed potential's convexity certificate.
struct ChangeOfVariables {
    std::function<double(double)> y_of_x;
    std::function<double(double)> x_of_y;
    Interval range; // of y
    std::function<double(double)> Wpp; // second derivative of the potential, argument y
    double rho_lower = 0.0;
    std::optional<double> minimizer_x; // x-location of the Wpp minimum, when interior
    std::optional<double> minimizer_y;
    std::function<double(double)> transformed_steady_pdf; // of y
    std::optional<DensityModel> transformed_steady_model; // generalized Gamma, inverse Gamma case
    double grid_min = 0.0;    // certificate: min of Wpp over the validation grid
    double grid_argmin = 0.0; // in the same coordinate as minimizer_x / minimizer_y
    bool minimizer_warning = false; // analytic formula disagreed with the grid
};

/// y(x) = int_0^x (1+t^2)^(-alpha/2) dt, alpha > 1, tabulated and inverted.
ChangeOfVariables cauchy_lsi_change_of_variables(double alpha, double lambda);

/// y(x) = 1/((alpha-1) x^(alpha-1)), alpha in (1, 3/2]; throws ConvexityLost
/// for alpha > 3/2.
ChangeOfVariables invgamma_lsi_change_of_variables(double alpha, double lambda, double m);

} // namespace heavytail
