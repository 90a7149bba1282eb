#pragma once

#include <vector>

#include "spikelab/schedule.hpp"
#include "spikelab/subordination.hpp"
#include "spikelab/support.hpp"

namespace spikelab {

struct OutlierPrediction {
    // Outlier location rho; for the unitary carrier this is the argument in
    // [0, 2*pi).
    double location = 0.0;
    // Spike indices hitting this location, per side.
    std::vector<int> sources_a;
    std::vector<int> sources_b;
    // k + l over both sides.
    int multiplicity = 0;
    // Half-width eps with (rho - 2 eps, rho + 2 eps) meeting K' only at rho.
    double window = 0.0;
};

struct PredictionSet {
    std::vector<OutlierPrediction> predictions;
    SupportSet K;
};

// Solve omega1(rho) = theta_i and omega2(rho) = tau_j over R \ K for the
// spikes with dist(theta, Supp) > eps_cut. Solutions within 1e-8 are merged
// and multiplicities summed.
PredictionSet predict_outliers(const SpikeSchedule& sched_a, const SpikeSchedule& sched_b,
                               const SubordinationPair& sp, double eps_cut,
                               const SupportSet* precomputed_K = nullptr);

// Multiplicative analogue: solves v_k(rho) = 1/theta on R+ \ K, or on the
// circle by argument bisection.
PredictionSet predict_outliers_multiplicative(const SpikeSchedule& sched_a,
                                              const SpikeSchedule& sched_b,
                                              const SubordinationPair& sp, double eps_cut,
                                              const SupportSet* precomputed_K = nullptr);

// K together with a degenerate interval at each predicted location.
SupportSet assemble_Kprime(const SupportSet& K, const std::vector<OutlierPrediction>& preds);

}  // namespace spikelab
