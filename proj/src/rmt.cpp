#include "spikelab/rmt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "spikelab/errors.hpp"
#include "spikelab/rng.hpp"

namespace spikelab {

namespace {

double arg_in_tau(cplx t) {
    double a = std::arg(t);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
}

Eigen::MatrixXcd assemble_model(const ModelSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    Eigen::MatrixXcd A = build_side_matrix(spec.a_side, n, rng);
    Eigen::MatrixXcd B = build_side_matrix(spec.b_side, n, rng);
    Eigen::MatrixXcd U = sample_haar_unitary(n, rng);
    Eigen::MatrixXcd conj_B = U * B * U.adjoint();
    switch (spec.model) {
        case ConvolutionType::AdditiveReal:
            return A + conj_B;
        case ConvolutionType::MultiplicativePositive: {
            // A is diagonal nonnegative here (validated), so the square root
            // is entrywise.
            Eigen::VectorXcd d = A.diagonal();
            Eigen::VectorXcd root = d.array().sqrt();
            return root.asDiagonal() * conj_B * root.asDiagonal();
        }
        case ConvolutionType::MultiplicativeUnitary:
            return A * conj_B;
    }
    throw NumericalError("assemble_model: unreachable");
}

}  // namespace

void ModelSpec::validate() const {
    if (n <= 0) throw PreconditionError("ModelSpec: n must be positive");
    if (a_side.phi(n) > n || b_side.phi(n) > n)
        throw PreconditionError("ModelSpec: phi(n) exceeds n");
    auto carrier_of = [](const SpikeSchedule& s) { return s.base_measure().carrier(); };
    switch (model) {
        case ConvolutionType::AdditiveReal:
            if (carrier_of(a_side) == Carrier::UnitCircle || carrier_of(b_side) == Carrier::UnitCircle)
                throw PreconditionError("ModelSpec: additive model with a circle carrier");
            break;
        case ConvolutionType::MultiplicativePositive:
            if (a_side.base_measure().support().lo() < 0 || b_side.base_measure().support().lo() < 0)
                throw PreconditionError("ModelSpec: positive model with negative support");
            if (a_side.gue_bulk() || b_side.gue_bulk())
                throw PreconditionError("ModelSpec: GUE bulk is additive-only");
            break;
        case ConvolutionType::MultiplicativeUnitary:
            if (carrier_of(a_side) != Carrier::UnitCircle || carrier_of(b_side) != Carrier::UnitCircle)
                throw PreconditionError("ModelSpec: unitary model needs circle carriers");
            break;
    }
}

Eigen::MatrixXcd sample_haar_unitary(int n, std::mt19937_64& rng) {
    if (n < 1) throw PreconditionError("sample_haar_unitary: n must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd ginibre(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) ginibre(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd Q = qr.householderQ();
    // Phase correction: divide each column by the phase of the matching
    // diagonal entry of R, otherwise the distribution is not Haar.
    Eigen::VectorXcd diag = qr.matrixQR().diagonal();
    for (int j = 0; j < n; ++j) {
        cplx d = diag(j);
        Q.col(j) *= d / std::abs(d);
    }
    return Q;
}

Eigen::MatrixXcd sample_gue_bulk(int n, std::mt19937_64& rng) {
    if (n < 1) throw PreconditionError("sample_gue_bulk: n must be >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd H(n, n);
    const double off_scale = 1.0 / std::sqrt(2.0 * n);
    const double diag_scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        H(i, i) = diag_scale * gauss(rng);
        for (int j = i + 1; j < n; ++j) {
            cplx h = off_scale * cplx(gauss(rng), gauss(rng));
            H(i, j) = h;
            H(j, i) = std::conj(h);
        }
    }
    return H;
}

Eigen::VectorXcd build_spiked_diagonal(const SpikeSchedule& sched, int n) {
    int phi = sched.phi(n);
    if (phi > n) throw PreconditionError("build_spiked_diagonal: phi(n) > n");
    Eigen::VectorXcd d(n);
    for (int i = 0; i < phi; ++i) d(i) = sched.spikes()[static_cast<std::size_t>(i)];
    const Measure& base = sched.base_measure();
    int bulk = n - phi;
    for (int i = 0; i < bulk; ++i) {
        double p = (i + 0.5) / bulk;
        d(phi + i) = base.carrier() == Carrier::UnitCircle ? base.circle_quantile(p)
                                                          : cplx(base.quantile(p), 0.0);
    }
    return d;
}

Eigen::MatrixXcd build_side_matrix(const SpikeSchedule& sched, int n, std::mt19937_64& rng) {
    if (!sched.gue_bulk()) {
        Eigen::VectorXcd d = build_spiked_diagonal(sched, n);
        return Eigen::MatrixXcd(d.asDiagonal());
    }
    // Spike block plus a semicircle-matched GUE bulk.
    int phi = sched.phi(n);
    int bulk = n - phi;
    const Measure& base = sched.base_measure();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < phi; ++i) M(i, i) = sched.spikes()[static_cast<std::size_t>(i)];
    if (bulk > 0) {
        M.bottomRightCorner(bulk, bulk) =
            (base.radius() / 2.0) * sample_gue_bulk(bulk, rng) +
            base.center() * Eigen::MatrixXcd::Identity(bulk, bulk);
    }
    return M;
}

SimulationRun run_model(const ModelSpec& spec, std::uint64_t trial) {
    spec.validate();
    auto t0 = std::chrono::steady_clock::now();
    auto rng = make_stream(spec.seed, trial);
    Eigen::MatrixXcd X = assemble_model(spec, rng);
    SimulationRun run;
    if (spec.model == ConvolutionType::MultiplicativeUnitary) {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(X, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success)
            throw NumericalError("run_model: complex eigensolver failed");
        run.circle_eigenvalues.assign(es.eigenvalues().data(),
                                      es.eigenvalues().data() + spec.n);
        for (const auto& ev : run.circle_eigenvalues) {
            if (std::abs(std::abs(ev) - 1.0) > 1e-9)
                throw NumericalError("run_model: unitary eigenvalue left the circle");
            run.eigenvalues.push_back(arg_in_tau(ev));
        }
        std::sort(run.eigenvalues.begin(), run.eigenvalues.end());
        std::sort(run.circle_eigenvalues.begin(), run.circle_eigenvalues.end(),
                  [](cplx a, cplx b) { return arg_in_tau(a) < arg_in_tau(b); });
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalError("run_model: Hermitian eigensolver failed");
        run.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + spec.n);
    }
    run.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return run;
}

Eigen::MatrixXcd expected_projected_resolvent(const ModelSpec& spec, cplx z, int p, int trials) {
    spec.validate();
    if (z.imag() == 0.0) throw PreconditionError("expected_projected_resolvent: Im z = 0");
    if (p < 1 || p > spec.n) throw PreconditionError("expected_projected_resolvent: bad p");
    if (trials < 1) throw PreconditionError("expected_projected_resolvent: trials must be >= 1");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(p, p);
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(spec.n, spec.n).leftCols(p);
    for (int t = 0; t < trials; ++t) {
        auto rng = make_stream(spec.seed, static_cast<std::uint64_t>(t));
        Eigen::MatrixXcd X = assemble_model(spec, rng);
        Eigen::MatrixXcd M = z * Eigen::MatrixXcd::Identity(spec.n, spec.n) - X;
        Eigen::MatrixXcd cols = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(rhs);
        acc += cols.topRows(p);
    }
    acc /= static_cast<double>(trials);
    if (spec.model != ConvolutionType::AdditiveReal) acc *= z;
    return acc;
}

}  // namespace spikelab
