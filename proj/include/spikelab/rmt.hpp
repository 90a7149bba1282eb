#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "spikelab/schedule.hpp"
#include "spikelab/subordination.hpp"

namespace spikelab {

struct ModelSpec {
    ConvolutionType model = ConvolutionType::AdditiveReal;
    SpikeSchedule a_side;
    SpikeSchedule b_side;
    int n = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SimulationRun {
    // Sorted; arguments in [0, 2*pi) for the unitary model.
    std::vector<double> eigenvalues;
    // Raw unit-modulus eigenvalues (unitary model only).
    std::vector<cplx> circle_eigenvalues;
    double wall_time_seconds = 0.0;
};

// Haar unitary via complex-Ginibre QR with the phase correction of the
// triangular diagonal (plain QR is not Haar).
Eigen::MatrixXcd sample_haar_unitary(int n, std::mt19937_64& rng);

// GUE normalized so the empirical spectrum converges to semicircle(0, 2):
// Hermitian, entries of variance 1/n.
Eigen::MatrixXcd sample_gue_bulk(int n, std::mt19937_64& rng);

// First phi(n) entries are the spikes; the rest are the (i - 1/2)/(n - phi)
// quantiles of the base measure, so the spectral distribution converges to it
// deterministically.
Eigen::VectorXcd build_spiked_diagonal(const SpikeSchedule& sched, int n);

// One sampled X_N with a fresh Haar unitary; trial shifts the RNG stream.
SimulationRun run_model(const ModelSpec& spec, std::uint64_t trial = 0);

// Monte Carlo average over fresh unitaries of the top-left p x p block of
// (zI - X)^{-1} (additive) or z (zI - X)^{-1} (multiplicative).
Eigen::MatrixXcd expected_projected_resolvent(const ModelSpec& spec, cplx z, int p, int trials);

// The deterministic side matrix of the model (A = diagonal or spike + GUE
// block); exposed for the pencil experiments.
Eigen::MatrixXcd build_side_matrix(const SpikeSchedule& sched, int n, std::mt19937_64& rng);

}  // namespace spikelab
