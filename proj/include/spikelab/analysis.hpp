#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spikelab/outliers.hpp"
#include "spikelab/rmt.hpp"

namespace spikelab {

struct WindowCheck {
    OutlierPrediction prediction;
    int observed_count = 0;
    bool pass = false;  // observed_count == multiplicity
};

struct VerificationReport {
    std::vector<WindowCheck> per_outlier;
    int bulk_escapees = 0;  // eigenvalues outside K'_eps
    double epsilon = 0.0;
    int n = 0;
    int trials = 1;
    double pass_fraction = 0.0;
    bool all_pass() const;
};

// Per-outlier pass rates over repeated trials.
struct TrialAggregate {
    std::vector<double> window_pass_fraction;
    double inclusion_pass_fraction = 0.0;  // trials with zero bulk escapees
    int trials = 0;
};

// Eigenvalues strictly inside (center - halfwidth, center + halfwidth).
int count_in_window(const std::vector<double>& sorted_eigs, double center, double halfwidth);

// Window counts and spectrum-inclusion check for one sampled run.
VerificationReport verify_run(const SimulationRun& run, const std::vector<OutlierPrediction>& preds,
                              const SupportSet& K, double eps);

TrialAggregate aggregate_reports(const std::vector<VerificationReport>& reports);

// Largest singular value by dense decomposition.
double operator_norm(const Eigen::MatrixXcd& M);

// For a Hermitian matrix the eps-pseudospectrum is exactly the
// eps-neighborhood of the spectrum.
SupportSet pseudospectrum_hermitian(const Eigen::MatrixXcd& A, double eps);

struct PerturbationBound {
    double lhs = 0.0;  // || E_X((alpha,beta)) - E_X0((alpha,beta)) ||
    double rhs = 0.0;  // 4 (beta - alpha + 2 delta) / (pi delta^2) ||X - X0||
    bool pass = false;
};

// Spectral-projection perturbation bound; requires both matrices to have no
// eigenvalues in the guard strips [alpha-delta, alpha] and [beta, beta+delta].
PerturbationBound projection_perturbation_check(const Eigen::MatrixXcd& X,
                                                const Eigen::MatrixXcd& X0, double alpha,
                                                double beta, double delta);

// Finite spike pencil F_N(z) = I_p - P (zI - X')^{-1} P* Theta for one sampled
// X' with the first p spikes of the A side replaced by alpha.
Eigen::MatrixXcd finite_pencil_additive(const ModelSpec& spec, cplx z, double alpha,
                                        std::uint64_t trial = 0);

// Deterministic limit Diag(1 - (theta_j - alpha)/(omega1(z) - alpha)).
Eigen::MatrixXcd pencil_limit_additive(const SubordinationPair& sp,
                                       const std::vector<double>& spikes, double alpha, cplx z);

// Multiplicative pencil (I_p - Theta) P (I - X'/z)^{-1} P* + Theta with
// Theta = Diag(theta_j / alpha).
Eigen::MatrixXcd finite_pencil_multiplicative(const ModelSpec& spec, cplx z, double alpha,
                                              std::uint64_t trial = 0);

// Limit Diag((1 - theta_j/alpha)/(1 - alpha omega1(1/z)) + theta_j/alpha).
Eigen::MatrixXcd pencil_limit_multiplicative(const SubordinationPair& sp,
                                             const std::vector<double>& spikes, double alpha,
                                             cplx z);

struct HistogramBin {
    double center;
    int count;
};

std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width);

}  // namespace spikelab
