#pragma once

#include "rfiot/model.hpp"
#include "rfiot/quadrature.hpp"
#include "rfiot/types.hpp"

// Analytic coverage probabilities and throughput for the RF-powered IoT
// network: energy coverage, conditional and unconditional DL/UL SINR
// coverage, the joint metric, and the regularly-powered baselines.

namespace rfiot {

enum class DensitySource {
    analytic_ph,  ///< thin the uplink interferer field by the analytic energy coverage
    fixed         ///< use an explicitly supplied density
};

struct ModeRequest {
    SystemParams params;
    SlotPartition slots;
    Mode mode = Mode::joint;
    DensitySource density_source = DensitySource::analytic_ph;
    double fixed_density = 0.0;         ///< interferer density when source == fixed
    double rate_log_base = 0.0;         ///< 0 = natural log; otherwise e.g. 2
    QuadOptions outer_quad{.rel_tol = 1e-6, .abs_tol = 1e-10};
    QuadOptions inner_quad{};

    void validate() const;
};

struct Throughput {
    double dl = 0.0;  ///< average downlink rate [bit/s]
    double ul = 0.0;  ///< average uplink rate [bit/s]
};

/// Energy shortfall for the request's mode; <= 0 means certain coverage.
double energy_shortfall(const DistancePair& d, const ModeRequest& req);

/// P(harvest >= demand | r1, r2): hypoexponential tail of the two dominant
/// exponential gains against the clamped shortfall.
double cond_energy_coverage(const DistancePair& d, const ModeRequest& req);

/// Unconditional energy coverage for the mode, by quadrature over the
/// mode's region decomposition.
CoverageEstimate energy_coverage(const ModeRequest& req);

/// P(DL SINR >= beta_dl | r1, r2) under the dominant-interferer model.
double cond_dl_sinr_coverage(const DistancePair& d, const ModeRequest& req);

/// Laplace transform of the normalized uplink interference at the tagged BS
/// for an interferer field of the given density. Exactly 1 at s = 0.
double ul_interference_laplace(double s, double density, const SystemParams& p);

/// P(UL SINR >= beta_ul | r1) with the interferer density resolved from the
/// request (analytic_ph evaluates the mode's energy coverage).
double cond_ul_sinr_coverage(double r1, const ModeRequest& req);

/// Thinned uplink interferer density the request resolves to.
double resolve_interferer_density(const ModeRequest& req);

/// Joint energy + DL SINR + UL SINR coverage (mode == joint), evaluated as
/// the factored conditional product over the split triangle.
CoverageEstimate joint_coverage(const ModeRequest& req);

/// Cross-check path: same probability evaluated through the expanded
/// two-exponential difference instead of the stable tail kernel.
CoverageEstimate joint_coverage_expanded(const ModeRequest& req);

/// DL coverage in the downlink mode (energy + DL SINR).
CoverageEstimate dl_coverage(const ModeRequest& req);

/// Regularly powered baseline: DL SINR coverage with no energy condition.
CoverageEstimate dl_coverage_regular(const ModeRequest& req);

/// UL coverage in the uplink mode (energy + UL SINR).
CoverageEstimate ul_coverage(const ModeRequest& req);

/// Regularly powered baseline: UL SINR coverage with the unthinned density.
CoverageEstimate ul_coverage_regular(const ModeRequest& req);

/// P(UL SINR >= beta_ul) against the nearest-distance density for an
/// arbitrary interferer density (the pure SINR event under thinning).
CoverageEstimate ul_sinr_coverage(const ModeRequest& req, double density);

/// Mode-appropriate average throughputs.
Throughput throughput(const ModeRequest& req);

// Region geometry of the joint mode, exposed for tests and the simulator.

/// r1 where the joint-mode shortfall changes sign, clamped to [0, r2];
/// 0 when the whole row is short, r2 when the whole row is covered.
double joint_energy_boundary(double r2, const SystemParams& p, const SlotPartition& s);

/// r2 below which joint-mode energy coverage is certain for every r1 < r2.
double joint_safe_radius(const SystemParams& p, const SlotPartition& s);

}  // namespace rfiot
