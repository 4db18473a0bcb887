#include "heavytail/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "heavytail/densities.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

namespace {

// Kronrod 15-point abscissae (positive half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed abscissae.
const double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
const double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
const double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Cell {
    double a, b;
    double value;
    double err;
    bool operator<(const Cell& o) const { return err < o.err; }
};

void check_finite(double fx, double x) {
    if (!std::isfinite(fx))
        fail(ErrorCode::NonFiniteIntegrand,
             "non-finite integrand sample at x = " + std::to_string(x));
}

// One GK 7/15 application on [a, b] with a QUADPACK-style error estimate.
Cell gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fc = f(center);
    check_finite(fc, center);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double resabs = kWgk[7] * std::fabs(fc);

    double fv[15];
    fv[7] = fc;
    for (int i = 0; i < 7; ++i) {
        double dx = half * kXgk[i];
        double f1 = f(center - dx);
        double f2 = f(center + dx);
        check_finite(f1, center - dx);
        check_finite(f2, center + dx);
        fv[i] = f1;
        fv[14 - i] = f2;
        resk += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
    }

    double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::fabs(fv[i] - reskh) + std::fabs(fv[14 - i] - reskh));

    double value = resk * half;
    resabs *= std::fabs(half);
    resasc *= std::fabs(half);
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
    return {a, b, value, err};
}

// Adaptive subdivision on a list of seed cells covering a finite domain.
QuadResult adapt(const std::function<double(double)>& f,
                 const std::vector<std::pair<double, double>>& seeds,
                 const QuadratureConfig& cfg) {
    std::priority_queue<Cell> heap;
    double total = 0.0, total_err = 0.0;
    for (auto [a, b] : seeds) {
        if (!(b > a)) continue;
        Cell c = gk15(f, a, b);
        total += c.value;
        total_err += c.err;
        heap.push(c);
    }
    int used = static_cast<int>(seeds.size());
    auto tol = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };
    while (total_err > tol()) {
        if (used >= cfg.max_subdivisions)
            fail(ErrorCode::QuadratureFailure,
                 "integrate: subdivision budget exhausted (err=" + std::to_string(total_err) + ")");
        Cell worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // cell no longer representable; accept its estimate
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.err;
            continue;
        }
        Cell left = gk15(f, worst.a, mid);
        Cell right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    return {total, total_err};
}

using Fn = std::function<double(double)>;

// Tail transforms: all map the unbounded piece onto u in (0, 1].
Fn right_tail(const Fn& f, double a) {
    // x = a - 1 + 1/u maps (0,1] -> [a, inf)
    return [f, a](double u) {
        double x = a - 1.0 + 1.0 / u;
        return f(x) / (u * u);
    };
}

Fn left_tail(const Fn& f, double b) {
    // x = b + 1 - 1/u maps (0,1] -> (-inf, b]
    return [f, b](double u) {
        double x = b + 1.0 - 1.0 / u;
        return f(x) / (u * u);
    };
}

} // namespace

QuadResult integrate(const Fn& f, Interval domain, const QuadratureConfig& cfg) {
    require(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0, ErrorCode::ConfigError,
            "integrate: tolerances must be positive");
    require(cfg.max_subdivisions >= 8, ErrorCode::ConfigError,
            "integrate: max_subdivisions must be >= 8");
    require(domain.hi > domain.lo, ErrorCode::ConfigError, "integrate: empty interval");

    switch (cfg.substitution) {
        case Substitution::TanMap: {
            require(!domain.bounded(), ErrorCode::ConfigError,
                    "TanMap only applies to unbounded intervals");
            // Fold the infinite endpoints: near t = pi/2 write x = cot(s)
            // with s = pi/2 - t, so the tail stays resolvable in double
            // precision arbitrarily far out (tan(t) saturates near 1e16).
            if (domain.is_real_line()) {
                Fn g = [f](double s) {
                    double sn = std::sin(s);
                    double x = 1.0 / std::tan(s);
                    return (f(x) + f(-x)) / (sn * sn);
                };
                return adapt(g, {{0.0, M_PI / 4}, {M_PI / 4, M_PI / 2}}, cfg);
            }
            if (domain.upper_infinite()) {
                double a = domain.lo;
                Fn g = [f, a](double s) {
                    double sn = std::sin(s);
                    return f(a + 1.0 / std::tan(s)) / (sn * sn);
                };
                return adapt(g, {{0.0, M_PI / 4}, {M_PI / 4, M_PI / 2}}, cfg);
            }
            double b = domain.hi;
            Fn g = [f, b](double s) {
                double sn = std::sin(s);
                return f(b - 1.0 / std::tan(s)) / (sn * sn);
            };
            return adapt(g, {{0.0, M_PI / 4}, {M_PI / 4, M_PI / 2}}, cfg);
        }
        case Substitution::ReciprocalMap: {
            require(domain.is_positive_half_line(), ErrorCode::ConfigError,
                    "ReciprocalMap only applies to (0, inf)");
            // x = 1/u leaves (0,inf) invariant; then fall through to the
            // default split on the transformed integrand.
            Fn g = [f](double u) { return f(1.0 / u) / (u * u); };
            QuadratureConfig sub = cfg;
            sub.substitution = Substitution::None;
            return integrate(g, Interval::positive_half_line(), sub);
        }
        case Substitution::ExpMap: {
            require(domain.is_positive_half_line(), ErrorCode::ConfigError,
                    "ExpMap only applies to (0, inf)");
            Fn g = [f](double t) {
                double x = std::exp(t);
                double v = f(x);
                return v == 0.0 ? 0.0 : v * x; // avoid 0 * inf at overflowing x
            };
            QuadratureConfig sub = cfg;
            sub.substitution = Substitution::None;
            return integrate(g, Interval::real_line(), sub);
        }
        case Substitution::None:
            break;
    }

    if (domain.bounded()) {
        double mid = 0.5 * (domain.lo + domain.hi);
        return adapt(f, {{domain.lo, mid}, {mid, domain.hi}}, cfg);
    }

    // Split at finite anchors and map each tail by the reciprocal rule.
    std::vector<std::pair<double, double>> seeds;
    if (domain.is_real_line()) {
        QuadResult core = adapt(f, {{-1.0, 0.0}, {0.0, 1.0}}, cfg);
        QuadResult lo = adapt(left_tail(f, -1.0), {{0.0, 0.5}, {0.5, 1.0}}, cfg);
        QuadResult hi = adapt(right_tail(f, 1.0), {{0.0, 0.5}, {0.5, 1.0}}, cfg);
        return {core.value + lo.value + hi.value,
                core.err_estimate + lo.err_estimate + hi.err_estimate};
    }
    if (domain.upper_infinite()) {
        double a = domain.lo;
        double split = (a == 0.0) ? 1.0 : a + std::max(1.0, std::fabs(a));
        QuadResult core = adapt(f, {{a, 0.5 * (a + split)}, {0.5 * (a + split), split}}, cfg);
        QuadResult tail = adapt(right_tail(f, split), {{0.0, 0.5}, {0.5, 1.0}}, cfg);
        return {core.value + tail.value, core.err_estimate + tail.err_estimate};
    }
    // lower-infinite
    double b = domain.hi;
    double split = b - std::max(1.0, std::fabs(b));
    QuadResult core = adapt(f, {{split, 0.5 * (split + b)}, {0.5 * (split + b), b}}, cfg);
    QuadResult tail = adapt(left_tail(f, split), {{0.0, 0.5}, {0.5, 1.0}}, cfg);
    return {core.value + tail.value, core.err_estimate + tail.err_estimate};
}

QuadResult expectation(const DensityModel& model, const Fn& g, const QuadratureConfig& cfg) {
    Fn integrand = [&model, &g](double x) { return g(x) * model.pdf(x); };
    return integrate(integrand, model.interval(), cfg);
}

} // namespace heavytail
