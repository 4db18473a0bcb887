#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heavytail/densities.hpp"
#include "heavytail/quadrature.hpp"

namespace heavytail {

/// A smooth test function with its analytic derivative and the metadata the
/// admissibility/finiteness analysis needs.
struct TestFunction {
    std::string id;
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    Interval domain;
    bool bounded = false;
    bool linear = false;
    std::optional<double> vanishes_at;
    // polynomial growth exponents at infinity (-inf for decay faster than
    // any power); they decide integrability against the model's tail
    double growth_phi = 0.0;
    double growth_dphi = 0.0;
};

/// The per-interval default corpora.
std::vector<TestFunction> default_corpus(const Interval& interval);

enum class InequalityKind { CHERNOFF, LSI, WIRTINGER, WIRTINGER_CENTERED_AT_MEDIAN };
enum class LhsKind { VARIANCE, ENTROPY, CENTERED_P_MOMENT, ZEROED_P_MOMENT };

/// One theorem instance: LHS functional, weight, constant, exponent.
struct InequalitySpec {
    explicit InequalitySpec(DensityModel m) : model(std::move(m)) {}

    std::string id;
    InequalityKind kind = InequalityKind::CHERNOFF;
    LhsKind lhs_kind = LhsKind::VARIANCE;
    DensityModel model;
    std::function<double(double)> weight;
    double weight_growth = 0.0;
    double constant = 1.0; // multiplies the RHS as printed
    double p = 2.0;        // Wirtinger exponent
};

enum class Verdict { PASS, FAIL, VACUOUS, ERROR };

const char* verdict_name(Verdict v);

struct InequalityReport {
    std::string spec_id;
    std::string fn_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double relative_slack = 0.0;
    double quad_err = 0.0;
    bool passed = false;
    Verdict verdict = Verdict::ERROR;
    std::string message;
};

/// Var[phi(X)].
QuadResult variance_functional(const DensityModel& model, const TestFunction& fn,
                               const QuadratureConfig& cfg = {});

/// Ent[phi^2(X)] = E[phi^2 log phi^2] - E[phi^2] log E[phi^2].
QuadResult entropy_functional(const DensityModel& model, const TestFunction& fn,
                              const QuadratureConfig& cfg = {});

/// E[w (phi')^2] for the p=2 forms, E[(w |phi'|)^p] for Wirtinger forms.
QuadResult dirichlet_form(const DensityModel& model, const std::function<double(double)>& weight,
                          const TestFunction& fn, double p, bool wirtinger,
                          const QuadratureConfig& cfg = {});

struct SpecParams {
    std::map<std::string, double> num;
    std::string sub;     // fp kind / density family for the *_GENERAL entries
    bool zeroed = false; // selects the vanishing-at-median Wirtinger variant
};

/// Instantiate a catalog entry. Known ids:
/// CHERNOFF_GENERAL, BRASCAMP_LIEB, CHERNOFF_CAUCHY, CHERNOFF_INVGAMMA,
/// CHERNOFF_INVGAMMA_STD, LSI_CAUCHY, LSI_BOBKOV_LEDOUX, LSI_INVGAMMA,
/// LSI_INVGAMMA_STD, LSI_GENERALIZED_GAMMA, WIRTINGER_GENERAL,
/// WIRTINGER_ZEROED, WIRTINGER_CAUCHY, WIRTINGER_GBETA, WIRTINGER_INVGAMMA.
InequalitySpec build_spec(const std::string& catalog_id, const SpecParams& params);

/// "catalog=LSI_CAUCHY beta=3 alpha=2" style block.
InequalitySpec build_spec_from_descriptor(const std::string& text);

std::vector<std::string> catalog_ids();

/// Whether fn satisfies the theorem's premises for this spec (domain match,
/// boundedness for LSI, vanishing at the median for zeroed Wirtinger).
bool admissible(const InequalitySpec& spec, const TestFunction& fn);

/// One report; requires admissible(spec, fn).
InequalityReport verify(const InequalitySpec& spec, const TestFunction& fn,
                        const QuadratureConfig& cfg = {});

/// One report per admissible (spec, fn) pair, in deterministic
/// (spec, fn) order; per-pair failures are captured, never thrown.
std::vector<InequalityReport> run_corpus(const std::vector<InequalitySpec>& specs,
                                         const std::vector<TestFunction>& corpus,
                                         const QuadratureConfig& cfg = {},
                                         bool parallel = true);

} // namespace heavytail
