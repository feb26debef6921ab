#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace rfiot {

enum class Mode { joint, downlink, uplink };

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::joint: return "joint";
        case Mode::downlink: return "downlink";
        case Mode::uplink: return "uplink";
    }
    return "?";
}

/// Physical and network constants. Everything is stored linear and SI
/// (watts, joules, seconds, hertz, densities per unit area); dB and dBm
/// exist only at the config boundary.
struct SystemParams {
    double lambda_b = 1.0;                        ///< BS density
    double lambda_u = 30.0;                       ///< device density
    double alpha = 4.0;                           ///< path-loss exponent (> 2)
    double eta = 1e-3;                            ///< RF-to-DC conversion efficiency
    double p_t = 1.0;                             ///< BS transmit power [W]
    double sigma2_dl = 1e-2;                      ///< downlink noise power [W]
    double sigma2_ul = 1.2589254117941673e-5;     ///< uplink noise power [W]
    double rho = 1.2589254117941673e-3;           ///< BS sensitivity [W]
    double epsilon = 0.8;                         ///< power-control exponent in [0,1]
    double slot_t = 1e-2;                         ///< slot duration [s]
    double e_rec = 1e-5;                          ///< receiver-activation energy [J]
    double beta_dl = 1.2589254117941673;          ///< DL SINR threshold, linear
    double beta_ul = 1.2589254117941673;          ///< UL SINR threshold, linear
    double w_d = 1e6;                             ///< DL channel bandwidth [Hz]
    double w_u = 1e6;                             ///< UL channel bandwidth [Hz]

    /// Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

/// Fractions (tau1, tau2, tau3) of the slot given to charging, downlink and
/// uplink. tau1 > 0 and the triple sums to 1.
struct SlotPartition {
    double tau1 = 0.4;
    double tau2 = 0.3;
    double tau3 = 0.3;

    /// Mode implied by which transmission sub-slots are present.
    /// tau3 == 0 -> downlink, tau2 == 0 -> uplink, otherwise joint.
    Mode mode() const {
        if (tau3 == 0.0) return Mode::downlink;
        if (tau2 == 0.0) return Mode::uplink;
        return Mode::joint;
    }

    void validate() const;

    static SlotPartition downlink(double tau1) { return {tau1, 1.0 - tau1, 0.0}; }
    static SlotPartition uplink(double tau1) { return {tau1, 0.0, 1.0 - tau1}; }
};

/// Distances from the typical device to its nearest and second-nearest BS.
struct DistancePair {
    double r1 = 0.0;
    double r2 = 0.0;

    void validate() const {
        if (!(r1 > 0.0) || !(r2 > r1))
            throw std::invalid_argument("DistancePair: need 0 < r1 < r2");
    }
};

enum class EstimateKind { quadrature, monte_carlo };

/// A probability with an attached error bound: quadrature tolerance for the
/// analytic engine, Wilson 95% half-width for the simulator.
struct CoverageEstimate {
    double value = 0.0;
    double error = 0.0;
    EstimateKind kind = EstimateKind::quadrature;
    std::uint64_t trials_or_evals = 0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace rfiot
