#include "heavytail/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <thread>

#include "heavytail/constants.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/fp_models.hpp"

namespace heavytail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TestFunction make_fn(std::string id, std::function<double(double)> phi,
                     std::function<double(double)> dphi, Interval dom, bool bounded,
                     std::optional<double> vanishes, double g_phi, double g_dphi,
                     bool linear = false) {
    TestFunction f;
    f.id = std::move(id);
    f.phi = std::move(phi);
    f.dphi = std::move(dphi);
    f.domain = dom;
    f.bounded = bounded;
    f.linear = linear;
    f.vanishes_at = vanishes;
    f.growth_phi = g_phi;
    f.growth_dphi = g_dphi;
    return f;
}

} // namespace

std::vector<TestFunction> default_corpus(const Interval& interval) {
    std::vector<TestFunction> out;
    if (interval.is_real_line()) {
        Interval R = Interval::real_line();
        out.push_back(make_fn(
            "x", [](double x) { return x; }, [](double) { return 1.0; }, R, false, 0.0, 1.0, 0.0,
            true));
        out.push_back(make_fn(
            "x_over_1px2", [](double x) { return x / (1.0 + x * x); },
            [](double x) {
                double d = 1.0 + x * x;
                return (1.0 - x * x) / (d * d);
            },
            R, true, 0.0, -1.0, -2.0));
        out.push_back(make_fn(
            "arctan", [](double x) { return std::atan(x); },
            [](double x) { return 1.0 / (1.0 + x * x); }, R, true, 0.0, 0.0, -2.0));
        out.push_back(make_fn(
            "tanh", [](double x) { return std::tanh(x); },
            [](double x) {
                double t = std::tanh(x);
                return 1.0 - t * t;
            },
            R, true, 0.0, 0.0, kNegInf));
        out.push_back(make_fn(
            "sin", [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }, R,
            true, 0.0, 0.0, 0.0));
        out.push_back(make_fn(
            "cubic_rational", [](double x) { return x * x * x / (1.0 + x * x); },
            [](double x) {
                double d = 1.0 + x * x;
                return x * x * (3.0 + x * x) / (d * d);
            },
            R, false, 0.0, 1.0, 0.0));
        return out;
    }
    require(interval.is_positive_half_line(), ErrorCode::ConfigError,
            "default_corpus: unsupported interval");
    Interval P = Interval::positive_half_line();
    out.push_back(make_fn(
        "x", [](double x) { return x; }, [](double) { return 1.0; }, P, false, 0.0, 1.0, 0.0,
        true));
    out.push_back(make_fn(
        "log1p", [](double x) { return std::log1p(x); },
        [](double x) { return 1.0 / (1.0 + x); }, P, false, 0.0, 0.0, -1.0));
    out.push_back(make_fn(
        "x_over_1px", [](double x) { return x / (1.0 + x); },
        [](double x) {
            double d = 1.0 + x;
            return 1.0 / (d * d);
        },
        P, true, 0.0, 0.0, -2.0));
    out.push_back(make_fn(
        "sqrt_ratio", [](double x) { return std::sqrt(x) / (1.0 + std::sqrt(x)); },
        [](double x) {
            double s = std::sqrt(x);
            double d = 1.0 + s;
            return 1.0 / (2.0 * s * d * d);
        },
        P, true, 0.0, 0.0, -1.5));
    out.push_back(make_fn(
        "one_minus_exp", [](double x) { return -std::expm1(-x); },
        [](double x) { return std::exp(-x); }, P, true, 0.0, 0.0, kNegInf));
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PASS: return "PASS";
        case Verdict::FAIL: return "FAIL";
        case Verdict::VACUOUS: return "VACUOUS";
        case Verdict::ERROR: return "ERROR";
    }
    return "?";
}

QuadResult variance_functional(const DensityModel& model, const TestFunction& fn,
                               const QuadratureConfig& cfg) {
    QuadResult mean = expectation(model, fn.phi, cfg);
    QuadResult second = expectation(
        model, [&fn](double x) { double v = fn.phi(x); return v * v; }, cfg);
    double var = second.value - mean.value * mean.value;
    double err = second.err_estimate +
                 2.0 * std::fabs(mean.value) * mean.err_estimate +
                 mean.err_estimate * mean.err_estimate;
    return {std::max(0.0, var), err};
}

QuadResult entropy_functional(const DensityModel& model, const TestFunction& fn,
                              const QuadratureConfig& cfg) {
    QuadResult second = expectation(
        model, [&fn](double x) { double v = fn.phi(x); return v * v; }, cfg);
    require(second.value > 0.0, ErrorCode::QuadratureFailure,
            "entropy_functional: E[phi^2] must be positive");
    QuadResult plogp = expectation(
        model,
        [&fn](double x) {
            double v = fn.phi(x);
            double s = std::max(v * v, 1e-300); // floor inside the log only
            return v * v * std::log(s);
        },
        cfg);
    double ent = plogp.value - second.value * std::log(second.value);
    double err = plogp.err_estimate +
                 (std::fabs(std::log(second.value)) + 1.0) * second.err_estimate;
    return {ent, err};
}

QuadResult dirichlet_form(const DensityModel& model, const std::function<double(double)>& weight,
                          const TestFunction& fn, double p, bool wirtinger,
                          const QuadratureConfig& cfg) {
    if (!wirtinger) {
        return expectation(
            model,
            [&weight, &fn](double x) {
                double d = fn.dphi(x);
                return weight(x) * d * d;
            },
            cfg);
    }
    return expectation(
        model,
        [&weight, &fn, p](double x) {
            double base = weight(x) * std::fabs(fn.dphi(x));
            return base == 0.0 ? 0.0 : std::pow(base, p);
        },
        cfg);
}

namespace {

bool moment_finite(double tail_exponent, double growth) {
    if (growth == kNegInf) return true;
    return growth < tail_exponent - 1.0;
}

QuadResult centered_p_moment(const DensityModel& model, const TestFunction& fn, double p,
                             const QuadratureConfig& cfg) {
    QuadResult mean = expectation(model, fn.phi, cfg);
    QuadResult mom = expectation(
        model,
        [&fn, p, mu = mean.value](double x) {
            double d = std::fabs(fn.phi(x) - mu);
            return d == 0.0 ? 0.0 : std::pow(d, p);
        },
        cfg);
    return {mom.value, mom.err_estimate + p * mean.err_estimate * (1.0 + std::fabs(mom.value))};
}

QuadResult zeroed_p_moment(const DensityModel& model, const TestFunction& fn, double p,
                           const QuadratureConfig& cfg) {
    return expectation(
        model,
        [&fn, p](double x) {
            double d = std::fabs(fn.phi(x));
            return d == 0.0 ? 0.0 : std::pow(d, p);
        },
        cfg);
}

} // namespace

bool admissible(const InequalitySpec& spec, const TestFunction& fn) {
    if (!(fn.domain.lo == spec.model.interval().lo && fn.domain.hi == spec.model.interval().hi))
        return false;
    if (spec.kind == InequalityKind::LSI && !fn.bounded) return false;
    if (spec.lhs_kind == LhsKind::ZEROED_P_MOMENT) {
        if (!fn.vanishes_at) return false;
        if (std::fabs(*fn.vanishes_at - spec.model.median()) > 1e-9) return false;
    }
    return true;
}

InequalityReport verify(const InequalitySpec& spec, const TestFunction& fn,
                        const QuadratureConfig& cfg) {
    require(admissible(spec, fn), ErrorCode::ConfigError,
            "verify: test function '" + fn.id + "' is not admissible for spec '" + spec.id + "'");
    InequalityReport rep;
    rep.spec_id = spec.id;
    rep.fn_id = fn.id;

    const double tail = spec.model.tail_exponent();
    const bool wirt = spec.lhs_kind == LhsKind::CENTERED_P_MOMENT ||
                      spec.lhs_kind == LhsKind::ZEROED_P_MOMENT;
    double rhs_growth;
    if (wirt) {
        rhs_growth = (fn.growth_dphi == kNegInf) ? kNegInf
                                                 : spec.p * (spec.weight_growth + fn.growth_dphi);
    } else {
        rhs_growth = (fn.growth_dphi == kNegInf) ? kNegInf
                                                 : spec.weight_growth + 2.0 * fn.growth_dphi;
    }
    bool rhs_finite = moment_finite(tail, rhs_growth);

    bool lhs_finite = true;
    switch (spec.lhs_kind) {
        case LhsKind::VARIANCE:
            lhs_finite = moment_finite(tail, 2.0 * fn.growth_phi);
            break;
        case LhsKind::ENTROPY:
            lhs_finite = true; // phi bounded by admissibility
            break;
        case LhsKind::CENTERED_P_MOMENT:
            lhs_finite = moment_finite(tail, spec.p * fn.growth_phi) &&
                         moment_finite(tail, fn.growth_phi);
            break;
        case LhsKind::ZEROED_P_MOMENT:
            lhs_finite = moment_finite(tail, spec.p * fn.growth_phi);
            break;
    }

    if (!rhs_finite || !lhs_finite) {
        rep.lhs = lhs_finite ? std::numeric_limits<double>::quiet_NaN() : kInf;
        rep.rhs = rhs_finite ? std::numeric_limits<double>::quiet_NaN() : kInf;
        rep.slack = std::numeric_limits<double>::quiet_NaN();
        rep.relative_slack = std::numeric_limits<double>::quiet_NaN();
        rep.quad_err = 0.0;
        rep.passed = true; // the inequality imposes nothing here
        rep.verdict = Verdict::VACUOUS;
        rep.message = !rhs_finite ? "right-hand side diverges" : "lhs moment premise fails";
        return rep;
    }

    QuadResult lhs;
    switch (spec.lhs_kind) {
        case LhsKind::VARIANCE:
            lhs = variance_functional(spec.model, fn, cfg);
            break;
        case LhsKind::ENTROPY:
            lhs = entropy_functional(spec.model, fn, cfg);
            break;
        case LhsKind::CENTERED_P_MOMENT:
            lhs = centered_p_moment(spec.model, fn, spec.p, cfg);
            break;
        case LhsKind::ZEROED_P_MOMENT:
            lhs = zeroed_p_moment(spec.model, fn, spec.p, cfg);
            break;
    }
    QuadResult dir = dirichlet_form(spec.model, spec.weight, fn, spec.p, wirt, cfg);

    rep.lhs = lhs.value;
    rep.rhs = spec.constant * dir.value;
    rep.slack = rep.rhs - rep.lhs;
    rep.quad_err = lhs.err_estimate + spec.constant * dir.err_estimate;
    double scale = std::max({std::fabs(rep.lhs), std::fabs(rep.rhs), 1e-300});
    rep.relative_slack = rep.slack / scale;
    rep.passed = rep.slack >= -(10.0 * rep.quad_err + 1e-12);
    rep.verdict = rep.passed ? Verdict::PASS : Verdict::FAIL;
    return rep;
}

std::vector<InequalityReport> run_corpus(const std::vector<InequalitySpec>& specs,
                                         const std::vector<TestFunction>& corpus,
                                         const QuadratureConfig& cfg, bool parallel) {
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < specs.size(); ++i)
        for (size_t j = 0; j < corpus.size(); ++j)
            if (admissible(specs[i], corpus[j])) pairs.emplace_back(i, j);

    std::vector<InequalityReport> reports(pairs.size());
    auto work = [&](size_t k) {
        const auto& [i, j] = pairs[k];
        try {
            reports[k] = verify(specs[i], corpus[j], cfg);
        } catch (const std::exception& e) {
            InequalityReport rep;
            rep.spec_id = specs[i].id;
            rep.fn_id = corpus[j].id;
            rep.verdict = Verdict::ERROR;
            rep.passed = false;
            rep.message = e.what();
            reports[k] = rep;
        }
    };

    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (!parallel || hw == 1 || pairs.size() < 2) {
        for (size_t k = 0; k < pairs.size(); ++k) work(k);
    } else {
        // strided partition; slots are disjoint, assembly order is by index
        unsigned n_threads = std::min<unsigned>(hw, pairs.size());
        std::vector<std::thread> threads;
        for (unsigned t = 0; t < n_threads; ++t)
            threads.emplace_back([&, t] {
                for (size_t k = t; k < pairs.size(); k += n_threads) work(k);
            });
        for (auto& th : threads) th.join();
    }
    return reports;
}

namespace {

double need(const SpecParams& p, const std::string& key) {
    auto it = p.num.find(key);
    require(it != p.num.end(), ErrorCode::ConfigError, "build_spec: missing parameter '" + key + "'");
    return it->second;
}

double opt(const SpecParams& p, const std::string& key, double fallback) {
    auto it = p.num.find(key);
    return it == p.num.end() ? fallback : it->second;
}

std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

InequalitySpec chernoff_from_fp(const FokkerPlanckModel& fp, std::string id) {
    WeightFunction w = chernoff_weight(fp);
    InequalitySpec spec(fp.steady_state);
    spec.id = std::move(id);
    spec.kind = InequalityKind::CHERNOFF;
    spec.lhs_kind = LhsKind::VARIANCE;
    spec.weight = w.w;
    spec.weight_growth = (fp.id == "gibbs" || fp.id == "ou")
                             ? (fp.steady_state.param("a") > 0.0 ? -2.0 : 0.0)
                             : 2.0;
    spec.constant = 1.0;
    return spec;
}

} // namespace

std::vector<std::string> catalog_ids() {
    return {"CHERNOFF_GENERAL",  "BRASCAMP_LIEB",      "CHERNOFF_CAUCHY",
            "CHERNOFF_INVGAMMA", "CHERNOFF_INVGAMMA_STD", "LSI_CAUCHY",
            "LSI_BOBKOV_LEDOUX", "LSI_INVGAMMA",       "LSI_INVGAMMA_STD",
            "LSI_GENERALIZED_GAMMA", "WIRTINGER_GENERAL", "WIRTINGER_ZEROED",
            "WIRTINGER_CAUCHY",  "WIRTINGER_GBETA",    "WIRTINGER_INVGAMMA"};
}

InequalitySpec build_spec(const std::string& catalog_id, const SpecParams& params) {
    if (catalog_id == "CHERNOFF_GENERAL") {
        require(!params.sub.empty(), ErrorCode::ConfigError,
                "CHERNOFF_GENERAL: needs an fp-model kind (cauchy|invgamma|wealth|gibbs|ou)");
        std::ostringstream desc;
        desc << "kind=" << params.sub;
        for (const auto& [k, v] : params.num) desc << " " << k << "=" << fmt_param(v);
        FokkerPlanckModel fp = fp_model_from_descriptor(desc.str());
        return chernoff_from_fp(fp, "CHERNOFF_GENERAL(" + desc.str() + ")");
    }
    if (catalog_id == "BRASCAMP_LIEB") {
        double a = opt(params, "a", 1.0), b = opt(params, "b", 1.0);
        DensityModel gb = DensityModel::gibbs_quartic(a, b);
        InequalitySpec spec(gb);
        spec.id = "BRASCAMP_LIEB(a=" + fmt_param(a) + " b=" + fmt_param(b) + ")";
        spec.kind = InequalityKind::CHERNOFF;
        spec.lhs_kind = LhsKind::VARIANCE;
        spec.weight = [a, b](double x) { return 1.0 / (3.0 * a * x * x + b); };
        spec.weight_growth = a > 0.0 ? -2.0 : 0.0;
        spec.constant = 1.0;
        return spec;
    }
    if (catalog_id == "CHERNOFF_CAUCHY") {
        double beta = need(params, "beta");
        InequalitySpec spec(DensityModel::cauchy(beta));
        spec.id = "CHERNOFF_CAUCHY(beta=" + fmt_param(beta) + ")";
        spec.kind = InequalityKind::CHERNOFF;
        spec.lhs_kind = LhsKind::VARIANCE;
        spec.weight = [](double x) { return 1.0 + x * x; };
        spec.weight_growth = 2.0;
        spec.constant = 1.0 / chernoff_rho(beta).value;
        return spec;
    }
    if (catalog_id == "CHERNOFF_INVGAMMA") {
        double beta = need(params, "beta"), m = opt(params, "m", 1.0);
        InequalitySpec spec(DensityModel::inverse_gamma_bm(beta, m));
        spec.id = "CHERNOFF_INVGAMMA(beta=" + fmt_param(beta) + " m=" + fmt_param(m) + ")";
        spec.kind = InequalityKind::CHERNOFF;
        spec.lhs_kind = LhsKind::VARIANCE;
        spec.weight = [](double x) { return x * x; };
        spec.weight_growth = 2.0;
        spec.constant = 1.0 / chernoff_rho(beta).value;
        return spec;
    }
    if (catalog_id == "CHERNOFF_INVGAMMA_STD") {
        double kappa = need(params, "kappa"), m = opt(params, "m", 1.0);
        InequalitySpec spec(DensityModel::inverse_gamma_std(kappa, m));
        spec.id = "CHERNOFF_INVGAMMA_STD(kappa=" + fmt_param(kappa) + " m=" + fmt_param(m) + ")";
        spec.kind = InequalityKind::CHERNOFF;
        spec.lhs_kind = LhsKind::VARIANCE;
        spec.weight = [](double x) { return x * x; };
        spec.weight_growth = 2.0;
        spec.constant = 1.0 / chernoff_gamma(kappa).value;
        return spec;
    }
    if (catalog_id == "LSI_CAUCHY") {
        double beta = need(params, "beta"), alpha = need(params, "alpha");
        InequalitySpec spec(DensityModel::cauchy(beta));
        spec.id = "LSI_CAUCHY(beta=" + fmt_param(beta) + " alpha=" + fmt_param(alpha) + ")";
        spec.kind = InequalityKind::LSI;
        spec.lhs_kind = LhsKind::ENTROPY;
        spec.weight = [alpha](double x) { return std::pow(1.0 + x * x, alpha); };
        spec.weight_growth = 2.0 * alpha;
        spec.constant = 2.0 / lsi_rho_cauchy(beta, alpha).value;
        return spec;
    }
    if (catalog_id == "LSI_BOBKOV_LEDOUX") {
        double beta = need(params, "beta");
        require(beta > 1.0, ErrorCode::ParameterOutOfRange, "LSI_BOBKOV_LEDOUX: requires beta > 1");
        InequalitySpec spec(DensityModel::cauchy(beta));
        spec.id = "LSI_BOBKOV_LEDOUX(beta=" + fmt_param(beta) + ")";
        spec.kind = InequalityKind::LSI;
        spec.lhs_kind = LhsKind::ENTROPY;
        spec.weight = [](double x) {
            double d = 1.0 + x * x;
            return d * d;
        };
        spec.weight_growth = 4.0;
        spec.constant = bobkov_ledoux_prefactor(beta).value;
        return spec;
    }
    if (catalog_id == "LSI_INVGAMMA") {
        double beta = need(params, "beta");
        double alpha = need(params, "alpha");
        double m = opt(params, "m", 1.0);
        InequalitySpec spec(DensityModel::inverse_gamma_bm(beta, m));
        spec.id = "LSI_INVGAMMA(beta=" + fmt_param(beta) + " alpha=" + fmt_param(alpha) +
                  " m=" + fmt_param(m) + ")";
        spec.kind = InequalityKind::LSI;
        spec.lhs_kind = LhsKind::ENTROPY;
        spec.weight = [alpha](double x) { return std::pow(x, 2.0 * alpha); };
        spec.weight_growth = 2.0 * alpha;
        spec.constant = 2.0 / lsi_rho_invgamma(beta, alpha, m).value;
        return spec;
    }
    if (catalog_id == "LSI_INVGAMMA_STD") {
        double kappa = need(params, "kappa");
        double alpha = need(params, "alpha");
        double m = opt(params, "m", 1.0);
        InequalitySpec spec(DensityModel::inverse_gamma_std(kappa, m));
        spec.id = "LSI_INVGAMMA_STD(kappa=" + fmt_param(kappa) + " alpha=" + fmt_param(alpha) +
                  " m=" + fmt_param(m) + ")";
        spec.kind = InequalityKind::LSI;
        spec.lhs_kind = LhsKind::ENTROPY;
        spec.weight = [alpha](double x) { return std::pow(x, 2.0 * alpha); };
        spec.weight_growth = 2.0 * alpha;
        spec.constant = 2.0 / lsi_rho_invgamma_std(kappa, alpha, m).value;
        return spec;
    }
    if (catalog_id == "LSI_GENERALIZED_GAMMA") {
        double beta = need(params, "beta");
        double alpha = need(params, "alpha");
        double m = opt(params, "m", 1.0);
        InequalitySpec spec(DensityModel::generalized_gamma(beta, alpha, m));
        spec.id = "LSI_GENERALIZED_GAMMA(beta=" + fmt_param(beta) + " alpha=" + fmt_param(alpha) +
                  " m=" + fmt_param(m) + ")";
        spec.kind = InequalityKind::LSI;
        spec.lhs_kind = LhsKind::ENTROPY;
        spec.weight = [](double) { return 1.0; };
        spec.weight_growth = 0.0;
        spec.constant = 2.0 / lsi_rho_invgamma(beta, alpha, m).value;
        return spec;
    }
    if (catalog_id == "WIRTINGER_GENERAL" || catalog_id == "WIRTINGER_ZEROED") {
        require(!params.sub.empty(), ErrorCode::ConfigError,
                catalog_id + ": needs a density family");
        std::ostringstream desc;
        desc << "family=" << params.sub;
        for (const auto& [k, v] : params.num)
            if (k != "p") desc << " " << k << "=" << fmt_param(v);
        DensityModel model = DensityModel::from_descriptor(desc.str());
        double p = opt(params, "p", 1.0);
        require(p >= 1.0, ErrorCode::ParameterOutOfRange, "Wirtinger: requires p >= 1");
        FokkerPlanckModel fp = median_form_model(model);
        InequalitySpec spec(model);
        bool zeroed = catalog_id == "WIRTINGER_ZEROED";
        spec.id = catalog_id + "(" + desc.str() + " p=" + fmt_param(p) + ")";
        spec.kind = zeroed ? InequalityKind::WIRTINGER_CENTERED_AT_MEDIAN
                           : InequalityKind::WIRTINGER;
        spec.lhs_kind = zeroed ? LhsKind::ZEROED_P_MOMENT : LhsKind::CENTERED_P_MOMENT;
        spec.weight = fp.P; // K(x)
        spec.weight_growth = 1.0;
        spec.p = p;
        spec.constant = std::pow(zeroed ? p : 2.0 * p, p);
        return spec;
    }
    if (catalog_id == "WIRTINGER_CAUCHY") {
        double beta = need(params, "beta");
        double p = opt(params, "p", 1.0);
        require(p >= 1.0, ErrorCode::ParameterOutOfRange, "Wirtinger: requires p >= 1");
        InequalitySpec spec(DensityModel::cauchy(beta));
        spec.id = "WIRTINGER_CAUCHY(beta=" + fmt_param(beta) + " p=" + fmt_param(p) + ")";
        spec.kind = InequalityKind::WIRTINGER;
        spec.lhs_kind = LhsKind::CENTERED_P_MOMENT;
        spec.weight = [](double x) { return 1.0 + std::fabs(x); };
        spec.weight_growth = 1.0;
        spec.p = p;
        spec.constant =
            std::pow(2.0, beta) * std::pow(2.0 * p / (2.0 * beta - 1.0), p);
        return spec;
    }
    if (catalog_id == "WIRTINGER_GBETA") {
        double beta = need(params, "beta");
        double p = opt(params, "p", 1.0);
        require(p >= 1.0, ErrorCode::ParameterOutOfRange, "Wirtinger: requires p >= 1");
        InequalitySpec spec(DensityModel::symmetric_polynomial(beta));
        spec.id = std::string("WIRTINGER_GBETA(beta=") + fmt_param(beta) + " p=" + fmt_param(p) +
                  (params.zeroed ? " zeroed" : "") + ")";
        spec.kind = params.zeroed ? InequalityKind::WIRTINGER_CENTERED_AT_MEDIAN
                                  : InequalityKind::WIRTINGER;
        spec.lhs_kind = params.zeroed ? LhsKind::ZEROED_P_MOMENT : LhsKind::CENTERED_P_MOMENT;
        spec.weight = [](double x) { return 1.0 + std::fabs(x); };
        spec.weight_growth = 1.0;
        spec.p = p;
        double factor = params.zeroed ? p : 2.0 * p;
        spec.constant = std::pow(factor / (2.0 * beta - 1.0), p);
        return spec;
    }
    if (catalog_id == "WIRTINGER_INVGAMMA") {
        double beta = need(params, "beta");
        double m = opt(params, "m", 1.0);
        double p = opt(params, "p", 1.0);
        require(p >= 1.0, ErrorCode::ParameterOutOfRange, "Wirtinger: requires p >= 1");
        InequalitySpec spec(DensityModel::inverse_gamma_bm(beta, m));
        spec.id = "WIRTINGER_INVGAMMA(beta=" + fmt_param(beta) + " m=" + fmt_param(m) +
                  " p=" + fmt_param(p) + ")";
        spec.kind = InequalityKind::WIRTINGER;
        spec.lhs_kind = LhsKind::CENTERED_P_MOMENT;
        spec.weight = [](double x) { return x; };
        spec.weight_growth = 1.0;
        spec.p = p;
        spec.constant = std::pow(p * wirtinger_D(beta, m).value, p);
        return spec;
    }
    fail(ErrorCode::CatalogUnknown, "build_spec: unknown catalog id '" + catalog_id + "'");
}

InequalitySpec build_spec_from_descriptor(const std::string& text) {
    SpecParams params;
    std::string catalog;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        require(eq != std::string::npos, ErrorCode::ConfigError,
                "spec descriptor: expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "catalog") {
            catalog = val;
        } else if (key == "family" || key == "kind") {
            params.sub = val;
        } else if (key == "zeroed") {
            params.zeroed = val == "1" || val == "true";
        } else {
            try {
                params.num[key] = std::stod(val);
            } catch (const std::exception&) {
                fail(ErrorCode::ConfigError, "spec descriptor: bad numeric value for '" + key + "'");
            }
        }
    }
    require(!catalog.empty(), ErrorCode::ConfigError, "spec descriptor: missing 'catalog'");
    return build_spec(catalog, params);
}

} // namespace heavytail
