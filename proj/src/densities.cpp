#include "heavytail/densities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "heavytail/errors.hpp"
#include "heavytail/quadrature.hpp"
#include "heavytail/special_functions.hpp"

namespace heavytail {

namespace detail {

// Tabulated cdf on the tan-mapped line for families without a closed form.
// Cumulative GK15 sums at the nodes; point queries finish with one local
// GK15 panel from the nearest node, so evaluations stay near machine accuracy.
struct CdfTable {
    std::vector<double> t;    // tan-map parameter nodes, strictly increasing
    std::vector<double> cumt; // cumulative kernel integral up to t[i]
    double total = 0.0;
    std::function<double(double)> kernel_t; // kernel(tan t) / cos^2 t

    static double gk15_panel(const std::function<double(double)>& f, double a, double b) {
        static const double xgk[8] = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.0};
        static const double wgk[8] = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        double s = wgk[7] * f(c);
        for (int i = 0; i < 7; ++i)
            s += wgk[i] * (f(c - h * xgk[i]) + f(c + h * xgk[i]));
        return s * h;
    }

    // Panel integral with recursive bisection; resolves the algebraic
    // boundary layers the tan map leaves for slowly decaying tails.
    static double refined_panel(const std::function<double(double)>& f, double a, double b,
                                double whole, int depth) {
        double mid = 0.5 * (a + b);
        if (depth >= 24 || mid <= a || mid >= b) return whole;
        double left = gk15_panel(f, a, mid);
        double right = gk15_panel(f, mid, b);
        double sum = left + right;
        if (std::fabs(sum - whole) <= 1e-14 + 1e-12 * std::fabs(sum)) return sum;
        return refined_panel(f, a, mid, left, depth + 1) +
               refined_panel(f, mid, b, right, depth + 1);
    }

    double panel(double a, double b) const {
        if (!(b > a)) return 0.0;
        return refined_panel(kernel_t, a, b, gk15_panel(kernel_t, a, b), 0);
    }

    void build(const std::function<double(double)>& log_kernel, int n_cells) {
        kernel_t = [log_kernel](double t) {
            double ct = std::cos(t);
            return std::exp(log_kernel(std::tan(t))) / (ct * ct);
        };
        const double delta = 1e-12; // tan covers |x| up to ~1e12
        const double half_span = M_PI / 2 - delta;
        t.resize(n_cells + 1);
        for (int i = 0; i <= n_cells; ++i) {
            // sin grading clusters nodes toward the mapped infinities
            double v = -1.0 + 2.0 * i / n_cells;
            t[i] = half_span * std::sin(v * M_PI / 2);
        }
        cumt.assign(n_cells + 1, 0.0);
        for (int i = 0; i < n_cells; ++i) cumt[i + 1] = cumt[i] + panel(t[i], t[i + 1]);
        total = cumt.back();
        require(std::isfinite(total) && total > 0.0, ErrorCode::QuadratureFailure,
                "cdf table: kernel integral is not finite/positive");
    }

    double cdf(double x) const {
        double tx = std::atan(x);
        if (tx <= t.front()) return 0.0;
        if (tx >= t.back()) return 1.0;
        auto it = std::upper_bound(t.begin(), t.end(), tx);
        size_t i = static_cast<size_t>(it - t.begin()) - 1;
        double partial = cumt[i] + panel(t[i], tx);
        return std::min(1.0, std::max(0.0, partial / total));
    }

    double quantile(double p, const std::function<double(double)>& pdf) const {
        double target = p * total;
        auto it = std::upper_bound(cumt.begin(), cumt.end(), target);
        size_t i = std::min(cumt.size() - 2, static_cast<size_t>(std::max<long>(0, it - cumt.begin() - 1)));
        double lo = t[i], hi = t[i + 1];
        // bisect in the tan parameter, then polish with Newton in x
        for (int k = 0; k < 60; ++k) {
            double mid = 0.5 * (lo + hi);
            double val = cumt[i] + panel(t[i], mid);
            (val < target ? lo : hi) = mid;
        }
        double x = std::tan(0.5 * (lo + hi));
        for (int k = 0; k < 4; ++k) {
            double fp = pdf(x);
            if (fp <= 0.0) break;
            double resid = cdf(x) - p;
            double step = resid / fp;
            if (!std::isfinite(step)) break;
            x -= std::clamp(step, -0.5 * (1.0 + std::fabs(x)), 0.5 * (1.0 + std::fabs(x)));
        }
        return x;
    }
};

} // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqr(double x) { return x * x; }

double log_kernel_impl(Family family, const std::vector<double>& params,
                       const std::function<double(double)>& V, double x) {
    switch (family) {
        case Family::CauchyType:
            return -params[0] * std::log1p(x * x);
        case Family::SymmetricPolynomial:
            return -2.0 * params[0] * std::log1p(std::fabs(x));
        case Family::InverseGammaBM:
            if (x <= 0.0) return -kInf;
            return -2.0 * params[0] * std::log(x) - params[1] / x;
        case Family::InverseGammaStd:
            if (x <= 0.0) return -kInf;
            return -(1.0 + params[0]) * std::log(x) - params[1] / x;
        case Family::GeneralizedGamma: {
            if (x <= 0.0) return -kInf;
            double beta = params[0], alpha = params[1], mm = params[2];
            double s = 1.0 / (alpha - 1.0);
            double a = (2.0 * beta - alpha) / (alpha - 1.0);
            double c = mm * std::pow(alpha - 1.0, s);
            return a * std::log(x) - c * std::pow(x, s);
        }
        case Family::GibbsPotential:
            return -V(x);
    }
    fail(ErrorCode::ParameterOutOfRange, "unknown family");
}

} // namespace

DensityModel DensityModel::cauchy(double beta) {
    require(beta > 0.5, ErrorCode::ParameterOutOfRange, "cauchy: requires beta > 1/2");
    DensityModel m;
    m.family_ = Family::CauchyType;
    m.params_ = {beta};
    m.interval_ = Interval::real_line();
    m.tail_exponent_ = 2.0 * beta;
    m.finalize();
    return m;
}

DensityModel DensityModel::symmetric_polynomial(double beta) {
    require(beta > 0.5, ErrorCode::ParameterOutOfRange,
            "symmetric_polynomial: requires beta > 1/2");
    DensityModel m;
    m.family_ = Family::SymmetricPolynomial;
    m.params_ = {beta};
    m.interval_ = Interval::real_line();
    m.tail_exponent_ = 2.0 * beta;
    m.finalize();
    return m;
}

DensityModel DensityModel::inverse_gamma_bm(double beta, double mm) {
    require(beta > 0.5, ErrorCode::ParameterOutOfRange, "inverse_gamma_bm: requires beta > 1/2");
    require(mm > 0.0, ErrorCode::ParameterOutOfRange, "inverse_gamma_bm: requires m > 0");
    DensityModel m;
    m.family_ = Family::InverseGammaBM;
    m.params_ = {beta, mm};
    m.interval_ = Interval::positive_half_line();
    m.tail_exponent_ = 2.0 * beta;
    m.finalize();
    return m;
}

DensityModel DensityModel::inverse_gamma_std(double kappa, double mm) {
    require(kappa > 0.0, ErrorCode::ParameterOutOfRange, "inverse_gamma_std: requires kappa > 0");
    require(mm > 0.0, ErrorCode::ParameterOutOfRange, "inverse_gamma_std: requires m > 0");
    DensityModel m;
    m.family_ = Family::InverseGammaStd;
    m.params_ = {kappa, mm};
    m.interval_ = Interval::positive_half_line();
    m.tail_exponent_ = kappa + 1.0;
    m.finalize();
    return m;
}

DensityModel DensityModel::generalized_gamma(double beta, double alpha, double mm) {
    require(alpha > 1.0 && beta > alpha, ErrorCode::ParameterOutOfRange,
            "generalized_gamma: requires beta > alpha > 1");
    require(mm > 0.0, ErrorCode::ParameterOutOfRange, "generalized_gamma: requires m > 0");
    DensityModel m;
    m.family_ = Family::GeneralizedGamma;
    m.params_ = {beta, alpha, mm};
    m.interval_ = Interval::positive_half_line();
    m.tail_exponent_ = kInf;
    m.finalize();
    return m;
}

DensityModel DensityModel::gibbs(std::function<double(double)> V, std::function<double(double)> dV,
                                 std::function<double(double)> d2V, double tail_exponent) {
    require(static_cast<bool>(V) && static_cast<bool>(dV) && static_cast<bool>(d2V),
            ErrorCode::ParameterOutOfRange, "gibbs: potential callbacks must be set");
    DensityModel m;
    m.family_ = Family::GibbsPotential;
    m.interval_ = Interval::real_line();
    m.tail_exponent_ = tail_exponent;
    m.V_ = std::move(V);
    m.dV_ = std::move(dV);
    m.d2V_ = std::move(d2V);
    m.finalize();
    return m;
}

DensityModel DensityModel::gibbs_quartic(double a, double b) {
    require(a >= 0.0 && b > 0.0, ErrorCode::ParameterOutOfRange,
            "gibbs_quartic: requires a >= 0 and b > 0");
    DensityModel m = gibbs([a, b](double x) { return a * sqr(sqr(x)) / 4 + b * sqr(x) / 2; },
                           [a, b](double x) { return a * x * sqr(x) + b * x; },
                           [a, b](double x) { return 3 * a * sqr(x) + b; });
    m.gibbs_a_ = a;
    m.gibbs_b_ = b;
    m.params_ = {a, b};
    return m;
}

double DensityModel::log_kernel(double x) const {
    return log_kernel_impl(family_, params_, V_, x);
}

void DensityModel::finalize() {
    // Normalize by quadrature after shifting out the kernel's log-scale peak,
    // so extreme parameter combinations neither overflow nor underflow.
    double peak_x;
    switch (family_) {
        case Family::CauchyType:
        case Family::SymmetricPolynomial:
        case Family::GibbsPotential:
            peak_x = 0.0;
            break;
        case Family::InverseGammaBM:
            peak_x = params_[1] / (2.0 * params_[0]);
            break;
        case Family::InverseGammaStd:
            peak_x = params_[1] / (1.0 + params_[0]);
            break;
        case Family::GeneralizedGamma: {
            double beta = params_[0], alpha = params_[1], mm = params_[2];
            double s = 1.0 / (alpha - 1.0);
            double a = (2.0 * beta - alpha) / (alpha - 1.0);
            double c = mm * std::pow(alpha - 1.0, s);
            peak_x = std::pow(a / (c * s), 1.0 / s);
            break;
        }
        default:
            peak_x = 0.0;
    }
    const double shift = log_kernel(peak_x);

    if (family_ == Family::InverseGammaStd) {
        // constant printed in closed form: m^kappa / Gamma(kappa)
        double kappa = params_[0], mm = params_[1];
        log_norm_ = kappa * std::log(mm) - special::log_gamma(kappa);
    } else {
        QuadratureConfig cfg;
        auto f = [this, shift](double x) { return std::exp(log_kernel(x) - shift); };
        // split at the kernel peak so narrow interior modes cannot be missed
        QuadResult left = integrate(f, {interval_.lo, peak_x}, cfg);
        QuadResult right = integrate(f, {peak_x, interval_.hi}, cfg);
        double value = left.value + right.value;
        require(value > 0.0 && std::isfinite(value), ErrorCode::QuadratureFailure,
                "normalization integral is not finite/positive");
        log_norm_ = -(std::log(value) + shift);
    }

    if (family_ == Family::CauchyType || family_ == Family::GibbsPotential) {
        auto tab = std::make_shared<detail::CdfTable>();
        // the closure must own its state: the table outlives this object
        // through copies of the model
        auto lk = [family = family_, params = params_, V = V_](double x) {
            return log_kernel_impl(family, params, V, x);
        };
        tab->build(lk, 2048);
        table_ = std::move(tab);
    }
}

double DensityModel::norm_constant() const { return std::exp(log_norm_); }

double DensityModel::pdf(double x) const {
    require(interval_.contains_closure(x), ErrorCode::DomainError,
            "pdf: argument outside interval closure");
    if (!interval_.contains(x)) return 0.0;
    return std::exp(log_norm_ + log_kernel(x));
}

double DensityModel::log_pdf(double x) const {
    require(interval_.contains_closure(x), ErrorCode::DomainError,
            "log_pdf: argument outside interval closure");
    return log_norm_ + log_kernel(x);
}

double DensityModel::dlog_pdf(double x) const {
    require(interval_.contains(x), ErrorCode::DomainError, "dlog_pdf: argument outside interval");
    switch (family_) {
        case Family::CauchyType:
            return -2.0 * params_[0] * x / (1.0 + x * x);
        case Family::SymmetricPolynomial: {
            double s = (x > 0) - (x < 0);
            return -2.0 * params_[0] * s / (1.0 + std::fabs(x));
        }
        case Family::InverseGammaBM:
            return -2.0 * params_[0] / x + params_[1] / (x * x);
        case Family::InverseGammaStd:
            return -(1.0 + params_[0]) / x + params_[1] / (x * x);
        case Family::GeneralizedGamma: {
            double beta = params_[0], alpha = params_[1], mm = params_[2];
            double s = 1.0 / (alpha - 1.0);
            double a = (2.0 * beta - alpha) / (alpha - 1.0);
            double c = mm * std::pow(alpha - 1.0, s);
            return a / x - c * s * std::pow(x, s - 1.0);
        }
        case Family::GibbsPotential:
            return -dV_(x);
    }
    fail(ErrorCode::ParameterOutOfRange, "unknown family");
}

bool DensityModel::symmetric() const {
    switch (family_) {
        case Family::CauchyType:
        case Family::SymmetricPolynomial:
            return true;
        case Family::GibbsPotential:
            return gibbs_a_ >= 0.0; // quartic potentials are even
        default:
            return false;
    }
}

double DensityModel::cdf(double x) const {
    if (x <= interval_.lo) return 0.0;
    if (x >= interval_.hi) return 1.0;
    switch (family_) {
        case Family::SymmetricPolynomial: {
            double beta = params_[0];
            double half_tail = 0.5 * std::pow(1.0 + std::fabs(x), 1.0 - 2.0 * beta);
            return x <= 0.0 ? half_tail : 1.0 - half_tail;
        }
        case Family::InverseGammaBM:
            return special::gamma_q(2.0 * params_[0] - 1.0, params_[1] / x);
        case Family::InverseGammaStd:
            return special::gamma_q(params_[0], params_[1] / x);
        case Family::GeneralizedGamma: {
            double beta = params_[0], alpha = params_[1], mm = params_[2];
            double s = 1.0 / (alpha - 1.0);
            double c = mm * std::pow(alpha - 1.0, s);
            return special::gamma_p(2.0 * beta - 1.0, c * std::pow(x, s));
        }
        case Family::CauchyType:
        case Family::GibbsPotential:
            return table_->cdf(x);
    }
    fail(ErrorCode::ParameterOutOfRange, "unknown family");
}

double DensityModel::quantile(double p) const {
    require(p > 0.0 && p < 1.0, ErrorCode::ParameterOutOfRange, "quantile: p must be in (0,1)");
    if (symmetric() && p == 0.5) return 0.0;
    if (table_) {
        auto f = [this](double x) { return pdf(x); };
        return table_->quantile(p, f);
    }

    // Bracketed bisection on the closed-form cdf. Initial guess from a
    // tail-asymptotic inversion, bracket [guess/16, 16*guess], expanded if
    // the sign change is not yet enclosed.
    double guess;
    switch (family_) {
        case Family::SymmetricPolynomial: {
            // closed-form inversion of the elementary cdf
            double beta = params_[0];
            double q = std::min(p, 1.0 - p);
            return (p < 0.5 ? -1.0 : 1.0) *
                   (std::pow(2.0 * q, 1.0 / (1.0 - 2.0 * beta)) - 1.0);
        }
        case Family::InverseGammaBM:
        case Family::InverseGammaStd: {
            double kappa = family_ == Family::InverseGammaBM ? 2.0 * params_[0] - 1.0 : params_[0];
            double mm = params_[1];
            double t = 1.0 - 1.0 / (9.0 * kappa);
            guess = mm / std::max(1e-12, kappa * t * t * t); // Wilson–Hilferty median of Gamma
            break;
        }
        case Family::GeneralizedGamma: {
            double beta = params_[0], alpha = params_[1], mm = params_[2];
            double s = 1.0 / (alpha - 1.0);
            double c = mm * std::pow(alpha - 1.0, s);
            double kappa = 2.0 * beta - 1.0;
            double t = kappa * std::pow(1.0 - 1.0 / (9.0 * kappa), 3.0);
            guess = std::pow(t / c, alpha - 1.0);
            break;
        }
        default:
            guess = 1.0;
    }
    double lo = guess / 16.0, hi = guess * 16.0;
    int guard = 0;
    while (cdf(lo) > p && guard++ < 64) lo /= 16.0;
    guard = 0;
    while (cdf(hi) < p && guard++ < 64) hi *= 16.0;
    require(cdf(lo) <= p && cdf(hi) >= p, ErrorCode::ConvergenceFailure,
            "quantile: failed to bracket");
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cdf(mid) < p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int k = 0; k < 3; ++k) { // Newton polish
        double fp = pdf(x);
        if (fp <= 0.0) break;
        double step = (cdf(x) - p) / fp;
        if (!std::isfinite(step)) break;
        double nx = x - step;
        if (nx > interval_.lo && (interval_.upper_infinite() || nx < interval_.hi)) x = nx;
    }
    return x;
}

double DensityModel::median() const {
    double med = symmetric() ? 0.0 : quantile(0.5);
    require(std::fabs(cdf(med) - 0.5) < 1e-10, ErrorCode::ConvergenceFailure,
            "median: cdf(median) deviates from 1/2");
    return med;
}

Moment DensityModel::moment(int k) const {
    require(k >= 0, ErrorCode::ParameterOutOfRange, "moment: order must be nonnegative");
    if (k == 0) return {true, 1.0};
    if (!(static_cast<double>(k) < tail_exponent_ - 1.0)) return {false, kInf};
    if (symmetric() && k % 2 == 1) return {true, 0.0};
    QuadratureConfig cfg;
    auto g = [k](double x) { return std::pow(x, k); };
    return {true, expectation(*this, g, cfg).value};
}

double DensityModel::potential(double x) const {
    require(family_ == Family::GibbsPotential, ErrorCode::DomainError,
            "potential: not a Gibbs model");
    return V_(x);
}
double DensityModel::potential_d1(double x) const {
    require(family_ == Family::GibbsPotential, ErrorCode::DomainError,
            "potential_d1: not a Gibbs model");
    return dV_(x);
}
double DensityModel::potential_d2(double x) const {
    require(family_ == Family::GibbsPotential, ErrorCode::DomainError,
            "potential_d2: not a Gibbs model");
    return d2V_(x);
}

double DensityModel::param(const std::string& name) const {
    auto get = [this](size_t i) {
        require(i < params_.size(), ErrorCode::ParameterOutOfRange, "param: missing");
        return params_[i];
    };
    switch (family_) {
        case Family::CauchyType:
        case Family::SymmetricPolynomial:
            if (name == "beta") return get(0);
            break;
        case Family::InverseGammaBM:
            if (name == "beta") return get(0);
            if (name == "m") return get(1);
            if (name == "kappa") return 2.0 * get(0) - 1.0;
            break;
        case Family::InverseGammaStd:
            if (name == "kappa") return get(0);
            if (name == "m") return get(1);
            if (name == "beta") return 0.5 * (get(0) + 1.0);
            break;
        case Family::GeneralizedGamma:
            if (name == "beta") return get(0);
            if (name == "alpha") return get(1);
            if (name == "m") return get(2);
            break;
        case Family::GibbsPotential:
            if (name == "a") return get(0);
            if (name == "b") return get(1);
            break;
    }
    fail(ErrorCode::ParameterOutOfRange, "param: unknown name '" + name + "'");
}

namespace {

const char* family_name(Family f) {
    switch (f) {
        case Family::CauchyType: return "cauchy";
        case Family::SymmetricPolynomial: return "sympoly";
        case Family::InverseGammaBM: return "invgamma_bm";
        case Family::InverseGammaStd: return "invgamma_std";
        case Family::GeneralizedGamma: return "gengamma";
        case Family::GibbsPotential: return "gibbs_quartic";
    }
    return "?";
}

std::string fmt_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::string DensityModel::descriptor() const {
    std::ostringstream os;
    os << "family=" << family_name(family_);
    switch (family_) {
        case Family::CauchyType:
        case Family::SymmetricPolynomial:
            os << " beta=" << fmt_short(params_[0]);
            break;
        case Family::InverseGammaBM:
            os << " beta=" << fmt_short(params_[0]) << " m=" << fmt_short(params_[1]);
            break;
        case Family::InverseGammaStd:
            os << " kappa=" << fmt_short(params_[0]) << " m=" << fmt_short(params_[1]);
            break;
        case Family::GeneralizedGamma:
            os << " beta=" << fmt_short(params_[0]) << " alpha=" << fmt_short(params_[1])
               << " m=" << fmt_short(params_[2]);
            break;
        case Family::GibbsPotential:
            require(gibbs_a_ >= 0.0, ErrorCode::ConfigError,
                    "descriptor: only quartic Gibbs models are serializable");
            os << " a=" << fmt_short(gibbs_a_) << " b=" << fmt_short(gibbs_b_);
            break;
    }
    return os.str();
}

DensityModel DensityModel::from_descriptor(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        require(eq != std::string::npos, ErrorCode::ConfigError,
                "descriptor: expected key=value, got '" + tok + "'");
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    auto num = [&kv](const std::string& key) {
        auto it = kv.find(key);
        require(it != kv.end(), ErrorCode::ConfigError, "descriptor: missing '" + key + "'");
        return std::stod(it->second);
    };
    auto it = kv.find("family");
    require(it != kv.end(), ErrorCode::ConfigError, "descriptor: missing 'family'");
    const std::string& fam = it->second;
    if (fam == "cauchy") return cauchy(num("beta"));
    if (fam == "sympoly") return symmetric_polynomial(num("beta"));
    if (fam == "invgamma_bm") return inverse_gamma_bm(num("beta"), num("m"));
    if (fam == "invgamma_std") return inverse_gamma_std(num("kappa"), num("m"));
    if (fam == "gengamma") return generalized_gamma(num("beta"), num("alpha"), num("m"));
    if (fam == "gibbs_quartic") return gibbs_quartic(num("a"), num("b"));
    fail(ErrorCode::ConfigError, "descriptor: unknown family '" + fam + "'");
}

} // namespace heavytail
