#include "rfiot/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace rfiot {

namespace {

// Laplace-transform inner tolerances; errors here enter the coverage
// integrals multiplied by O(2 pi density), so they sit two orders below the
// outer tolerances.
constexpr QuadOptions kLaplaceInner{.rel_tol = 1e-8, .abs_tol = 1e-13, .max_evals = 200000};
constexpr QuadOptions kLaplaceOuter{.rel_tol = 1e-7, .abs_tol = 1e-12, .max_evals = 500000};

double rate_log(double beta, double base) {
    const double v = std::log1p(beta);
    return base > 0.0 ? v / std::log(base) : v;
}

// Cached r1 |-> conditional UL SINR coverage for one (params, density) pair.
// Everything downstream evaluates this inside double integrals, so the
// Laplace transform is tabulated once per request instead of per node.
class UlSinrFactor {
  public:
    UlSinrFactor(const SystemParams& p, double density) {
        if (density <= 0.0 || p.beta_ul <= 0.0) return;  // factor is identically 1
        const double hi = 6.0 / std::sqrt(p.lambda_b);
        const double lo = hi * 1e-4;
        table_ = std::make_unique<AdaptiveTable>(
            [&p, density](double r1) {
                const double s = p.beta_ul * std::pow(r1, (1.0 - p.epsilon) * p.alpha);
                return std::exp(-s * p.sigma2_ul / p.rho) * ul_interference_laplace(s, density, p);
            },
            lo, hi, 3e-8, 14);
    }

    double operator()(double r1) const {
        if (!table_) return 1.0;
        return std::clamp((*table_)(r1), 0.0, 1.0);
    }

  private:
    std::unique_ptr<AdaptiveTable> table_;
};

struct JointGeometry {
    double charge = 0.0;      // receiver-activation demand
    double charge_ul = 0.0;   // uplink demand coefficient
};

double shortfall_for(const DistancePair& d, const SystemParams& p, const SlotPartition& s,
                     Mode mode) {
    switch (mode) {
        case Mode::joint: return energy_shortfall_joint(d, p, s);
        case Mode::downlink: return energy_shortfall_dl(d.r2, p, s);
        case Mode::uplink: return energy_shortfall_ul(d, p, s);
    }
    return 0.0;
}

// Region decomposition for the mode: outer r2 breaks where the certain-energy
// region changes shape, plus the r1 boundary curve inside a row.
RegionSplit region_for(const ModeRequest& req) {
    const SystemParams& p = req.params;
    const SlotPartition& s = req.slots;
    RegionSplit split;
    switch (req.mode) {
        case Mode::downlink: {
            const double a = energy_safe_radius_dl(p, s);
            if (std::isfinite(a)) split.outer_breaks.push_back(a);
            break;  // shortfall independent of r1: no inner boundary
        }
        case Mode::uplink: {
            const double a = energy_safe_radius_ul(p, s);
            if (std::isfinite(a)) {
                split.outer_breaks.push_back(a);
                if (p.epsilon > 0.0)
                    split.inner_boundary = [p, s](double r2) {
                        return ul_energy_boundary(r2, p, s);
                    };
            }
            break;
        }
        case Mode::joint: {
            const double rstar = joint_safe_radius(p, s);
            if (std::isfinite(rstar) && rstar > 0.0) {
                split.outer_breaks.push_back(rstar);
                const double a = energy_safe_radius_dl(p, s);
                if (std::isfinite(a) && a > rstar * (1.0 + 1e-12))
                    split.outer_breaks.push_back(a);
                split.inner_boundary = [p, s](double r2) {
                    return joint_energy_boundary(r2, p, s);
                };
            }
            break;
        }
    }
    return split;
}

CoverageEstimate to_estimate(const QuadResult& q) {
    return {std::clamp(q.value, 0.0, 1.0), q.error, EstimateKind::quadrature, q.evals};
}

}  // namespace

void SystemParams::validate() const {
    auto bad = [](const std::string& msg) { throw std::invalid_argument("SystemParams: " + msg); };
    if (!(alpha > 2.0)) bad("alpha must be > 2");
    if (!(eta > 0.0) || !(eta < 1.0)) bad("eta must be in (0, 1)");
    if (!(epsilon >= 0.0) || !(epsilon <= 1.0)) bad("epsilon must be in [0, 1]");
    if (!(lambda_b > 0.0)) bad("lambda_b must be > 0");
    if (!(lambda_u > lambda_b)) bad("lambda_u must exceed lambda_b");
    if (!(p_t > 0.0)) bad("p_t must be > 0");
    if (!(sigma2_dl > 0.0) || !(sigma2_ul > 0.0)) bad("noise powers must be > 0");
    if (!(rho > 0.0)) bad("rho must be > 0");
    if (!(slot_t > 0.0)) bad("slot_t must be > 0");
    if (!(e_rec >= 0.0)) bad("e_rec must be >= 0");
    if (!(beta_dl >= 0.0) || !(beta_ul >= 0.0)) bad("SINR thresholds must be >= 0");
    if (!(w_d > 0.0) || !(w_u > 0.0)) bad("bandwidths must be > 0");
}

void SlotPartition::validate() const {
    if (!(tau1 > 0.0) || !(tau2 >= 0.0) || !(tau3 >= 0.0))
        throw std::invalid_argument("SlotPartition: need tau1 > 0, tau2 >= 0, tau3 >= 0");
    if (std::abs(tau1 + tau2 + tau3 - 1.0) > 1e-12)
        throw std::invalid_argument("SlotPartition: fractions must sum to 1");
}

void ModeRequest::validate() const {
    params.validate();
    slots.validate();
    if (mode == Mode::downlink && slots.tau3 != 0.0)
        throw std::invalid_argument("ModeRequest: downlink mode requires tau3 = 0");
    if (mode == Mode::uplink && slots.tau2 != 0.0)
        throw std::invalid_argument("ModeRequest: uplink mode requires tau2 = 0");
    if (mode == Mode::joint && (slots.tau2 <= 0.0 || slots.tau3 <= 0.0))
        throw std::invalid_argument("ModeRequest: joint mode requires tau2 > 0 and tau3 > 0");
    if (density_source == DensitySource::fixed &&
        (fixed_density < 0.0 || fixed_density > params.lambda_b))
        throw std::invalid_argument("ModeRequest: fixed density must lie in [0, lambda_b]");
}

double energy_shortfall(const DistancePair& d, const ModeRequest& req) {
    return shortfall_for(d, req.params, req.slots, req.mode);
}

double cond_energy_coverage(const DistancePair& d, const ModeRequest& req) {
    const double a = std::pow(d.r1, req.params.alpha);
    const double b = std::pow(d.r2, req.params.alpha);
    return hypoexp_tail(a, b, energy_shortfall(d, req));
}

CoverageEstimate energy_coverage(const ModeRequest& req) {
    req.validate();
    const SystemParams& p = req.params;
    RegionSplit split = region_for(req);
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        return pair_distance_pdf(r1, r2, p) * cond_energy_coverage(d, req);
    };
    return to_estimate(integrate_triangle(f, split, req.outer_quad, req.inner_quad));
}

double cond_dl_sinr_coverage(const DistancePair& d, const ModeRequest& req) {
    const SystemParams& p = req.params;
    if (p.beta_dl == 0.0) return 1.0;
    const double ratio = p.beta_dl * std::pow(d.r1 / d.r2, p.alpha);
    return std::exp(-dl_sinr_exponent(d, p)) / (1.0 + ratio);
}

double ul_interference_laplace(double s, double density, const SystemParams& p) {
    if (s < 0.0 || density < 0.0)
        throw std::domain_error("ul_interference_laplace: s and density must be >= 0");
    if (s == 0.0 || density == 0.0) return 1.0;
    const double ea = p.epsilon * p.alpha;
    const double xexp = (1.0 - p.epsilon) * p.alpha;
    auto inner = [&](double x) {
        const double x2 = x * x;
        const double a = std::pow(x, xexp) / s;
        QuadResult q = integrate_1d(
            [&](double v) {
                const double den = 1.0 + a * std::pow(v, -0.5 * ea);
                return M_PI * density * x2 * std::exp(-M_PI * density * x2 * v) / den;
            },
            0.0, 1.0, kLaplaceInner);
        return q.value;
    };
    QuadResult outer = integrate_semi_infinite([&](double x) { return x * inner(x); }, 0.0,
                                               kLaplaceOuter);
    return std::exp(-2.0 * M_PI * density * outer.value);
}

double resolve_interferer_density(const ModeRequest& req) {
    if (req.density_source == DensitySource::fixed) return req.fixed_density;
    if (req.mode == Mode::downlink) return req.params.lambda_b;  // no uplink sub-slot
    return energy_coverage(req).value * req.params.lambda_b;
}

double cond_ul_sinr_coverage(double r1, const ModeRequest& req) {
    if (!(r1 > 0.0)) throw std::domain_error("cond_ul_sinr_coverage: r1 must be > 0");
    const SystemParams& p = req.params;
    if (p.beta_ul == 0.0) return 1.0;
    const double s = p.beta_ul * std::pow(r1, (1.0 - p.epsilon) * p.alpha);
    const double density = resolve_interferer_density(req);
    return std::exp(-s * p.sigma2_ul / p.rho) * ul_interference_laplace(s, density, p);
}

double joint_energy_boundary(double r2, const SystemParams& p, const SlotPartition& s) {
    const double gap = residual_gain_mean(r2, p) - charge_constant(p, s);
    if (gap <= 0.0) return 0.0;  // residual mean cannot even cover activation
    const double cu = charge_constant_ul(p, s);
    if (cu == 0.0 || p.epsilon == 0.0) {
        if (cu > 0.0 && cu >= gap) return 0.0;  // constant uplink demand exceeds the slack
        return r2;
    }
    return std::min(r2, std::pow(gap / cu, 1.0 / (p.epsilon * p.alpha)));
}

double joint_safe_radius(const SystemParams& p, const SlotPartition& s) {
    const double c = charge_constant(p, s);
    const double cu = charge_constant_ul(p, s);
    if (c == 0.0 && cu == 0.0) return kInfinity;
    if (cu == 0.0) return energy_safe_radius_dl(p, s);
    if (c == 0.0 && p.epsilon > 0.0) return energy_safe_radius_ul(p, s);
    // general case: residual mean equals total demand along the diagonal
    auto g = [&](double r2) {
        return residual_gain_mean(r2, p) - c - cu * std::pow(r2, p.epsilon * p.alpha);
    };
    double hi = std::isfinite(energy_safe_radius_dl(p, s))
                    ? energy_safe_radius_dl(p, s)
                    : energy_safe_radius_ul(p, s);
    double lo = hi;
    while (g(lo) <= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) return 0.0;
    }
    if (g(hi) > 0.0) return hi;  // only possible through rounding at the cap
    return root_bisect(g, lo, hi, 1e-13);
}

CoverageEstimate joint_coverage(const ModeRequest& req) {
    req.validate();
    if (req.mode != Mode::joint)
        throw std::invalid_argument("joint_coverage: request mode must be joint");
    const SystemParams& p = req.params;
    const UlSinrFactor ul(p, resolve_interferer_density(req));
    RegionSplit split = region_for(req);
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        return pair_distance_pdf(r1, r2, p) * cond_energy_coverage(d, req) *
               cond_dl_sinr_coverage(d, req) * ul(r1);
    };
    return to_estimate(integrate_triangle(f, split, req.outer_quad, req.inner_quad));
}

CoverageEstimate joint_coverage_expanded(const ModeRequest& req) {
    req.validate();
    if (req.mode != Mode::joint)
        throw std::invalid_argument("joint_coverage_expanded: request mode must be joint");
    const SystemParams& p = req.params;
    const UlSinrFactor ul(p, resolve_interferer_density(req));
    RegionSplit split = region_for(req);
    // The two shortfall terms are individually divergent near r1 = r2, so the
    // expanded form still evaluates their pointwise difference.
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        const double base = pair_distance_pdf(r1, r2, p) * cond_dl_sinr_coverage(d, req) * ul(r1);
        const double shortfall = energy_shortfall(d, req);
        if (base == 0.0 || shortfall <= 0.0) return base;
        const double ra = std::pow(r1, p.alpha);
        const double rb = std::pow(r2, p.alpha);
        const double tail =
            (rb * std::exp(-ra * shortfall) - ra * std::exp(-rb * shortfall)) / (rb - ra);
        if (!std::isfinite(tail))  // r1 and r2 equal at fp resolution
            return base * hypoexp_tail(ra, rb, shortfall);
        return base * tail;
    };
    return to_estimate(integrate_triangle(f, split, req.outer_quad, req.inner_quad));
}

CoverageEstimate dl_coverage(const ModeRequest& req) {
    req.validate();
    if (req.mode != Mode::downlink)
        throw std::invalid_argument("dl_coverage: request mode must be downlink");
    const SystemParams& p = req.params;
    RegionSplit split = region_for(req);
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        return pair_distance_pdf(r1, r2, p) * cond_energy_coverage(d, req) *
               cond_dl_sinr_coverage(d, req);
    };
    return to_estimate(integrate_triangle(f, split, req.outer_quad, req.inner_quad));
}

CoverageEstimate dl_coverage_regular(const ModeRequest& req) {
    req.params.validate();
    const SystemParams& p = req.params;
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        return pair_distance_pdf(r1, r2, p) * cond_dl_sinr_coverage(d, req);
    };
    return to_estimate(integrate_triangle(f, RegionSplit{}, req.outer_quad, req.inner_quad));
}

CoverageEstimate ul_coverage(const ModeRequest& req) {
    req.validate();
    if (req.mode != Mode::uplink)
        throw std::invalid_argument("ul_coverage: request mode must be uplink");
    const SystemParams& p = req.params;
    const UlSinrFactor ul(p, resolve_interferer_density(req));
    RegionSplit split = region_for(req);
    auto f = [&](double r1, double r2) {
        const DistancePair d{r1, r2};
        return pair_distance_pdf(r1, r2, p) * cond_energy_coverage(d, req) * ul(r1);
    };
    return to_estimate(integrate_triangle(f, split, req.outer_quad, req.inner_quad));
}

CoverageEstimate ul_sinr_coverage(const ModeRequest& req, double density) {
    req.params.validate();
    const SystemParams& p = req.params;
    const UlSinrFactor ul(p, density);
    QuadResult q = integrate_semi_infinite(
        [&](double r1) { return nearest_distance_pdf(r1, p) * ul(r1); }, 0.0, req.outer_quad);
    return to_estimate(q);
}

CoverageEstimate ul_coverage_regular(const ModeRequest& req) {
    return ul_sinr_coverage(req, req.params.lambda_b);
}

Throughput throughput(const ModeRequest& req) {
    req.validate();
    const SystemParams& p = req.params;
    const SlotPartition& s = req.slots;
    Throughput out;
    switch (req.mode) {
        case Mode::joint: {
            const double pj = joint_coverage(req).value;
            out.dl = s.tau2 * p.w_d * rate_log(p.beta_dl, req.rate_log_base) * pj;
            out.ul = s.tau3 * p.w_u * rate_log(p.beta_ul, req.rate_log_base) * pj;
            break;
        }
        case Mode::downlink:
            out.dl = s.tau2 * p.w_d * rate_log(p.beta_dl, req.rate_log_base) *
                     dl_coverage(req).value;
            break;
        case Mode::uplink:
            out.ul = s.tau3 * p.w_u * rate_log(p.beta_ul, req.rate_log_base) *
                     ul_coverage(req).value;
            break;
    }
    return out;
}

}  // namespace rfiot
