#pragma once

#include <cmath>
#include <stdexcept>

#include "rfiot/types.hpp"

// Closed-form scalar pieces shared by the analytic engine and the simulator:
// the mean far-field gain, the hypoexponential tail of the two-dominant-BS
// harvest, the per-mode energy shortfall thresholds and the region boundaries
// where they change sign, the conditional DL SINR exponent, and the
// nearest/second-nearest distance densities of a planar PPP.

namespace rfiot {

/// Mean aggregate path gain from all BSs beyond radius r2 (unit fading mean):
/// 2*pi*lambda_b/(alpha-2) * r2^(2-alpha).
inline double residual_gain_mean(double r2, const SystemParams& p) {
    if (!(r2 > 0.0)) throw std::domain_error("residual_gain_mean: r2 must be > 0");
    return 2.0 * M_PI * p.lambda_b / (p.alpha - 2.0) * std::pow(r2, 2.0 - p.alpha);
}

// Relative gap below which the two-exponential tail switches to its Erlang-2
// limit; the direct form cancels catastrophically as the rates merge.
inline constexpr double kHypoexpSwitch = 1e-6;

/// P(X + Y >= f) for independent X ~ Exp(a), Y ~ Exp(b). Returns 1 for f <= 0.
inline double hypoexp_tail(double a, double b, double f) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("hypoexp_tail: rates must be > 0");
    if (!(f > 0.0)) return 1.0;
    if (std::abs(b - a) < kHypoexpSwitch * std::max(a, b))
        return (1.0 + a * f) * std::exp(-a * f);
    return (b * std::exp(-a * f) - a * std::exp(-b * f)) / (b - a);
}

/// Normalized receiver-activation energy demand E_rec / (tau1 T eta P_t).
inline double charge_constant(const SystemParams& p, const SlotPartition& s) {
    if (!(s.tau1 > 0.0)) throw std::domain_error("charge_constant: tau1 must be > 0");
    return p.e_rec / (s.tau1 * p.slot_t * p.eta * p.p_t);
}

/// Normalized uplink transmit-energy demand coefficient tau3 rho / (tau1 eta P_t);
/// multiplies r1^(eps*alpha).
inline double charge_constant_ul(const SystemParams& p, const SlotPartition& s) {
    if (!(s.tau1 > 0.0)) throw std::domain_error("charge_constant_ul: tau1 must be > 0");
    return s.tau3 * p.rho / (s.tau1 * p.eta * p.p_t);
}

/// Joint-mode energy shortfall: what the two dominant exponential gains must
/// exceed once the residual mean is credited. <= 0 means coverage is certain.
inline double energy_shortfall_joint(const DistancePair& d, const SystemParams& p,
                                     const SlotPartition& s) {
    return charge_constant(p, s) +
           charge_constant_ul(p, s) * std::pow(d.r1, p.epsilon * p.alpha) -
           residual_gain_mean(d.r2, p);
}

/// Downlink-mode shortfall (no uplink transmit energy); independent of r1.
inline double energy_shortfall_dl(double r2, const SystemParams& p, const SlotPartition& s) {
    return charge_constant(p, s) - residual_gain_mean(r2, p);
}

/// Uplink-mode shortfall (no receiver-activation energy).
inline double energy_shortfall_ul(const DistancePair& d, const SystemParams& p,
                                  const SlotPartition& s) {
    return charge_constant_ul(p, s) * std::pow(d.r1, p.epsilon * p.alpha) -
           residual_gain_mean(d.r2, p);
}

/// Second-nearest-BS distance below which downlink-mode energy coverage is
/// certain. +inf when the demand is zero.
inline double energy_safe_radius_dl(const SystemParams& p, const SlotPartition& s) {
    const double c = charge_constant(p, s);
    if (c == 0.0) return kInfinity;
    return std::pow(2.0 * M_PI * p.lambda_b / (c * (p.alpha - 2.0)), 1.0 / (p.alpha - 2.0));
}

/// Uplink-mode analogue; +inf when tau3 = 0 kills the uplink energy demand.
inline double energy_safe_radius_ul(const SystemParams& p, const SlotPartition& s) {
    const double c = charge_constant_ul(p, s);
    if (c == 0.0) return kInfinity;
    return std::pow(2.0 * M_PI * p.lambda_b / (c * (p.alpha - 2.0)),
                    1.0 / ((p.epsilon + 1.0) * p.alpha - 2.0));
}

/// r1 boundary of the certain-coverage region in the uplink mode: below it the
/// transmit energy demand stays under the residual mean.
inline double ul_energy_boundary(double r2, const SystemParams& p, const SlotPartition& s) {
    if (!(r2 > 0.0)) throw std::domain_error("ul_energy_boundary: r2 must be > 0");
    const double c = charge_constant_ul(p, s);
    if (c == 0.0) throw std::domain_error("ul_energy_boundary: zero uplink demand");
    const double ea = p.epsilon * p.alpha;
    return std::pow(2.0 * M_PI * p.lambda_b / ((p.alpha - 2.0) * c), 1.0 / ea) *
           std::pow(r2, (2.0 - p.alpha) / ea);
}

/// Exponent of the conditional DL SINR coverage: noise term plus the mean
/// residual interference beyond the second-nearest BS, both scaled by beta_dl.
inline double dl_sinr_exponent(const DistancePair& d, const SystemParams& p) {
    const double r1a = std::pow(d.r1, p.alpha);
    return p.beta_dl * p.sigma2_dl * r1a / p.p_t +
           2.0 * M_PI * p.lambda_b * p.beta_dl * r1a /
               ((p.alpha - 2.0) * std::pow(d.r2, p.alpha - 2.0));
}

/// Joint pdf of the nearest two BS distances of a PPP; 0 outside 0 < r1 < r2.
inline double pair_distance_pdf(double r1, double r2, const SystemParams& p) {
    if (!(r1 > 0.0) || !(r2 > r1)) return 0.0;
    const double c = 2.0 * M_PI * p.lambda_b;
    return c * c * r1 * r2 * std::exp(-p.lambda_b * M_PI * r2 * r2);
}

/// Nearest-BS distance pdf (Rayleigh).
inline double nearest_distance_pdf(double r1, const SystemParams& p) {
    if (!(r1 > 0.0)) return 0.0;
    return 2.0 * M_PI * p.lambda_b * r1 * std::exp(-M_PI * p.lambda_b * r1 * r1);
}

/// P(second-nearest distance < a): at least two PPP points in the disc.
inline double second_nearest_cdf(double a, const SystemParams& p) {
    if (!(a > 0.0)) return 0.0;
    if (std::isinf(a)) return 1.0;
    const double mu = M_PI * p.lambda_b * a * a;
    return 1.0 - std::exp(-mu) - mu * std::exp(-mu);
}

}  // namespace rfiot
