#pragma once

#include <functional>

#include "heavytail/interval.hpp"

namespace heavytail {

class DensityModel;

enum class Substitution {
    None,          // auto: direct on bounded intervals, split + reciprocal tails otherwise
    TanMap,        // x = tan(t)
    ReciprocalMap, // x = 1/u before integrating
    ExpMap,        // x = e^t (positive half-line only)
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4096;
    Substitution substitution = Substitution::None;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
};

/// Adaptive Gauss–Kronrod 7/15 integration of f over an open interval.
/// Infinite endpoints are transformed per the config's substitution; the
/// default strategy splits heavy-tailed integrands at |x| = 1 and applies
/// the reciprocal map on the tails. Throws QuadratureFailure when the
/// subdivision budget is exhausted before |err| <= max(abs_tol, rel_tol*|I|),
/// and NonFiniteIntegrand if f evaluates to NaN/Inf at an interior node.
QuadResult integrate(const std::function<double(double)>& f, Interval domain,
                     const QuadratureConfig& config = {});

/// E[g(X)] for X ~ model, same error contract as integrate().
QuadResult expectation(const DensityModel& model, const std::function<double(double)>& g,
                       const QuadratureConfig& config = {});

} // namespace heavytail
