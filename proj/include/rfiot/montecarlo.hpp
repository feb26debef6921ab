#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfiot/rng.hpp"
#include "rfiot/types.hpp"

// Ground-truth stochastic simulator: samples the BS and device point
// processes, plays out one charging/downlink/uplink slot per trial, and
// estimates every coverage probability with Wilson confidence intervals.

namespace rfiot {

enum class EnergyModel {
    full_sum,      ///< harvest from every BS in the window
    dominant_two   ///< nearest two BSs exactly plus the mean of the rest
};

enum class UlInterferenceModel {
    ppp_approx,    ///< thinned PPP of active devices, serving distance < interferer distance
    voronoi_exact  ///< explicit device PPP, per-cell scheduling, per-device energy thinning
};

struct SimConfig {
    SystemParams params;
    SlotPartition slots;
    Mode mode = Mode::joint;
    std::uint64_t n_trials = 10000;
    std::uint64_t master_seed = 1;
    double window_radius = 0.0;       ///< 0 selects the auto rule
    EnergyModel energy_model = EnergyModel::full_sum;
    UlInterferenceModel ul_model = UlInterferenceModel::ppp_approx;
    double ph_override = -1.0;        ///< >= 0 pins the active-device probability
    double rate_log_base = 0.0;       ///< 0 = natural log

    void validate() const;

    /// Window radius satisfying the point-count floor, the energy-tail rule
    /// against the mode's demand scale and, when a downlink sub-slot exists,
    /// the interference-tail rule; capped at 40000 expected points.
    double auto_window_radius() const;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct TrialOutcome {
    double e_h = 0.0;        ///< harvested energy [J]
    double e_min = 0.0;      ///< demand for this trial [J]
    double sinr_dl = 0.0;    ///< +inf when the mode has no downlink sub-slot
    double sinr_ul = 0.0;    ///< +inf when the mode has no uplink sub-slot
    double r1 = 0.0;
    double r2 = 0.0;
    bool covered_energy = false;
    bool covered_dl = false;
    bool covered_ul = false;
    bool covered_joint = false;
};

struct EstimateBundle {
    CoverageEstimate energy;     ///< P(harvest >= demand)
    CoverageEstimate dl_sinr;    ///< P(DL SINR >= beta_dl), no energy conjunct
    CoverageEstimate ul_sinr;    ///< P(UL SINR >= beta_ul), no energy conjunct
    CoverageEstimate coverage;   ///< the mode's headline conjunction
    double throughput_dl = 0.0;
    double throughput_ul = 0.0;
    double p_h_used = 1.0;       ///< active-device probability behind the thinning
    double window_radius = 0.0;
    double interference_radius = 0.0;
    std::uint64_t retries = 0;
    std::uint64_t n_trials = 0;
    std::uint64_t master_seed = 0;
};

/// Homogeneous PPP on a disc of the given radius around the origin.
std::vector<Point> sample_ppp(double density, double radius, Rng& rng);

/// Harvested energy of one charging sub-slot. pathgain[i] = dist_i^(-alpha);
/// fading[i] are the unit-mean exponential gains of this sub-slot.
double harvest_energy(std::span<const double> pathgain, std::span<const double> fading,
                      std::size_t nearest, std::size_t second, double r2, const SimConfig& cfg);

struct UlInterferer {
    double power = 0.0;     ///< transmit power rho * serving_dist^(eps*alpha) [W]
    double distance = 0.0;  ///< distance to the tagged BS
};

/// Interferer field of one uplink sub-slot, centered on the tagged BS.
/// ppp_approx draws a PPP of the given (already thinned) density whose points
/// carry unconditional Rayleigh serving distances and are kept only when the
/// serving BS is nearer than the tagged BS; this is the field whose
/// interference Laplace transform the analytic engine integrates.
std::vector<UlInterferer> ppp_ul_interferers(double density, double radius,
                                             const SystemParams& p, Rng& rng);

/// voronoi_exact: device PPP, nearest-BS association on the sampled field,
/// one device per non-empty cell, per-device energy thinning, tagged cell
/// excluded.
std::vector<UlInterferer> voronoi_ul_interferers(std::span<const Point> bs, std::size_t tagged,
                                                 double radius, const SimConfig& cfg, Rng& rng);

/// Interference window: far-field tail below 1e-3 of signal_scale, at most
/// 40000 expected points.
double ul_interference_window(double density, const SystemParams& p, double signal_scale);

/// Per-run constants derived from the config (window, thinning, radii).
struct SimPlan {
    double window_radius = 0.0;
    double p_h = 1.0;
    double thinned_density = 0.0;
    double interference_radius = 0.0;
};

/// Resolves the plan; with ppp_approx and no override this runs the
/// deterministic energy-only pre-pass that estimates the active probability.
SimPlan make_plan(const SimConfig& cfg);

/// One slot. Retries (counting them) if the window holds fewer than two BSs.
TrialOutcome simulate_trial(const SimConfig& cfg, const SimPlan& plan, Rng& rng,
                            std::uint32_t& retries);

/// Runs n_trials with per-trial counter-derived streams and aggregates.
/// Bit-identical for identical (config, master_seed) at any thread count.
/// Throws if more than 1% of trials needed geometry retries.
EstimateBundle estimate(const SimConfig& cfg);

/// Same trials as estimate(), returning the raw outcomes (for binned studies).
std::vector<TrialOutcome> collect_trials(const SimConfig& cfg, SimPlan* plan_out = nullptr);

/// Wilson 95% interval: value = sample mean, error = interval half-width.
CoverageEstimate wilson_estimate(std::uint64_t successes, std::uint64_t n);

}  // namespace rfiot
