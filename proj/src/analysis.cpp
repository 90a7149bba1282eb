#include "spikelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spikelab/errors.hpp"
#include "spikelab/rng.hpp"

namespace spikelab {

bool VerificationReport::all_pass() const {
    if (bulk_escapees > 0) return false;
    return std::all_of(per_outlier.begin(), per_outlier.end(),
                       [](const WindowCheck& w) { return w.pass; });
}

int count_in_window(const std::vector<double>& sorted_eigs, double center, double halfwidth) {
    if (halfwidth <= 0) throw PreconditionError("count_in_window: halfwidth must be > 0");
    auto lo = std::upper_bound(sorted_eigs.begin(), sorted_eigs.end(), center - halfwidth);
    auto hi = std::lower_bound(sorted_eigs.begin(), sorted_eigs.end(), center + halfwidth);
    return static_cast<int>(hi - lo);
}

VerificationReport verify_run(const SimulationRun& run, const std::vector<OutlierPrediction>& preds,
                              const SupportSet& K, double eps) {
    for (const auto& p : preds)
        if (eps >= p.window && p.window > 0)
            throw PreconditionError("verify_run: eps exceeds a prediction window");
    for (std::size_t i = 0; i < preds.size(); ++i)
        for (std::size_t j = i + 1; j < preds.size(); ++j)
            if (std::abs(preds[i].location - preds[j].location) < 2 * eps)
                throw ConfigError("verify_run: overlapping verification windows");

    VerificationReport report;
    report.epsilon = eps;
    report.n = static_cast<int>(run.eigenvalues.size());
    for (const auto& p : preds) {
        WindowCheck w;
        w.prediction = p;
        w.observed_count = count_in_window(run.eigenvalues, p.location, eps);
        w.pass = w.observed_count == p.multiplicity;
        report.per_outlier.push_back(std::move(w));
    }
    SupportSet kprime_eps = assemble_Kprime(K, preds).fattened(eps);
    for (double ev : run.eigenvalues)
        if (!kprime_eps.contains(ev)) ++report.bulk_escapees;
    report.pass_fraction = report.all_pass() ? 1.0 : 0.0;
    return report;
}

TrialAggregate aggregate_reports(const std::vector<VerificationReport>& reports) {
    TrialAggregate agg;
    agg.trials = static_cast<int>(reports.size());
    if (reports.empty()) return agg;
    agg.window_pass_fraction.assign(reports.front().per_outlier.size(), 0.0);
    int inclusion_ok = 0;
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.per_outlier.size(); ++i)
            if (r.per_outlier[i].pass) agg.window_pass_fraction[i] += 1.0;
        if (r.bulk_escapees == 0) ++inclusion_ok;
    }
    for (auto& f : agg.window_pass_fraction) f /= agg.trials;
    agg.inclusion_pass_fraction = static_cast<double>(inclusion_ok) / agg.trials;
    return agg;
}

double operator_norm(const Eigen::MatrixXcd& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

SupportSet pseudospectrum_hermitian(const Eigen::MatrixXcd& A, double eps) {
    if (eps <= 0) throw PreconditionError("pseudospectrum_hermitian: eps must be > 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
    std::vector<Interval> points;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double ev = es.eigenvalues()(i);
        points.push_back({ev, ev});
    }
    return SupportSet(std::move(points)).fattened(eps);
}

PerturbationBound projection_perturbation_check(const Eigen::MatrixXcd& X,
                                                const Eigen::MatrixXcd& X0, double alpha,
                                                double beta, double delta) {
    if (!(alpha < beta) || delta <= 0)
        throw PreconditionError("projection_perturbation_check: need alpha < beta, delta > 0");
    auto projection = [&](const Eigen::MatrixXcd& M) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            double ev = es.eigenvalues()(i);
            bool in_guard = (ev >= alpha - delta && ev <= alpha) || (ev >= beta && ev <= beta + delta);
            if (in_guard)
                throw PreconditionError("projection_perturbation_check: eigenvalue in a guard strip");
        }
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(M.rows(), M.cols());
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            double ev = es.eigenvalues()(i);
            if (ev > alpha && ev < beta)
                P += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
        }
        return P;
    };
    PerturbationBound out;
    out.lhs = operator_norm(projection(X) - projection(X0));
    out.rhs = 4.0 * (beta - alpha + 2.0 * delta) / (std::numbers::pi * delta * delta) *
              operator_norm(X - X0);
    out.pass = out.lhs < out.rhs;
    return out;
}

namespace {

// X' of the pencil construction: the first p spike entries of the A side
// replaced by alpha, conjugated B side untouched.
Eigen::MatrixXcd sample_pencil_base(const ModelSpec& spec, double alpha, std::uint64_t trial,
                                    int p, bool multiplicative) {
    auto rng = make_stream(spec.seed, trial);
    Eigen::MatrixXcd A = build_side_matrix(spec.a_side, spec.n, rng);
    for (int i = 0; i < p; ++i) A(i, i) = alpha;
    Eigen::MatrixXcd B = build_side_matrix(spec.b_side, spec.n, rng);
    Eigen::MatrixXcd U = sample_haar_unitary(spec.n, rng);
    Eigen::MatrixXcd conj_B = U * B * U.adjoint();
    if (!multiplicative) return A + conj_B;
    Eigen::VectorXcd root = A.diagonal().array().sqrt();
    return root.asDiagonal() * conj_B * root.asDiagonal();
}

}  // namespace

Eigen::MatrixXcd finite_pencil_additive(const ModelSpec& spec, cplx z, double alpha,
                                        std::uint64_t trial) {
    spec.validate();
    int p = spec.a_side.phi(spec.n);
    if (p < 1) throw PreconditionError("finite_pencil_additive: no designated spikes");
    Eigen::MatrixXcd Xp = sample_pencil_base(spec, alpha, trial, p, false);
    Eigen::MatrixXcd M = z * Eigen::MatrixXcd::Identity(spec.n, spec.n) - Xp;
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(spec.n, spec.n).leftCols(p);
    Eigen::MatrixXcd cols = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(rhs);
    Eigen::VectorXcd theta(p);
    for (int i = 0; i < p; ++i)
        theta(i) = spec.a_side.spikes()[static_cast<std::size_t>(i)] - alpha;
    return Eigen::MatrixXcd::Identity(p, p) - cols.topRows(p) * theta.asDiagonal();
}

Eigen::MatrixXcd pencil_limit_additive(const SubordinationPair& sp,
                                       const std::vector<double>& spikes, double alpha, cplx z) {
    cplx w1 = sp.omega1(z);
    auto p = static_cast<int>(spikes.size());
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(p, p);
    for (int i = 0; i < p; ++i) F(i, i) = 1.0 - (spikes[static_cast<std::size_t>(i)] - alpha) / (w1 - alpha);
    return F;
}

Eigen::MatrixXcd finite_pencil_multiplicative(const ModelSpec& spec, cplx z, double alpha,
                                              std::uint64_t trial) {
    spec.validate();
    if (spec.model != ConvolutionType::MultiplicativePositive)
        throw PreconditionError("finite_pencil_multiplicative: model is not positive-multiplicative");
    if (alpha <= 0) throw PreconditionError("finite_pencil_multiplicative: alpha must be > 0");
    int p = spec.a_side.phi(spec.n);
    if (p < 1) throw PreconditionError("finite_pencil_multiplicative: no designated spikes");
    Eigen::MatrixXcd Xp = sample_pencil_base(spec, alpha, trial, p, true);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(spec.n, spec.n) - Xp / z;
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Identity(spec.n, spec.n).leftCols(p);
    Eigen::MatrixXcd cols = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(rhs);
    Eigen::VectorXcd theta(p), one_minus(p);
    for (int i = 0; i < p; ++i) {
        theta(i) = spec.a_side.spikes()[static_cast<std::size_t>(i)] / alpha;
        one_minus(i) = 1.0 - theta(i);
    }
    return one_minus.asDiagonal() * cols.topRows(p) +
           Eigen::MatrixXcd(theta.asDiagonal());
}

Eigen::MatrixXcd pencil_limit_multiplicative(const SubordinationPair& sp,
                                             const std::vector<double>& spikes, double alpha,
                                             cplx z) {
    cplx w1 = sp.omega1(1.0 / z);
    auto p = static_cast<int>(spikes.size());
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        double ratio = spikes[static_cast<std::size_t>(i)] / alpha;
        F(i, i) = (1.0 - ratio) / (1.0 - alpha * w1) + ratio;
    }
    return F;
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, double bin_width) {
    if (bin_width <= 0) throw PreconditionError("histogram: bin_width must be > 0");
    if (values.empty()) return {};
    double lo = *std::min_element(values.begin(), values.end());
    std::vector<int> counts;
    for (double v : values) {
        auto k = static_cast<std::size_t>(std::llround((v - lo) / bin_width));
        if (k >= counts.size()) counts.resize(k + 1, 0);
        ++counts[k];
    }
    std::vector<HistogramBin> bins;
    for (std::size_t k = 0; k < counts.size(); ++k)
        bins.push_back({lo + static_cast<double>(k) * bin_width, counts[k]});
    return bins;
}

}  // namespace spikelab
