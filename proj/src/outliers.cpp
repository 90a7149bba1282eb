#include "spikelab/outliers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

constexpr double kMergeTol = 1e-8;
constexpr double kRootCheckTol = 1e-6;
constexpr int kSamplesPerGap = 64;

struct RawRoot {
    double rho;
    int side;        // 1 = A, 2 = B
    int spike_index;
};

// Boundary value of the relevant subordination map, or nothing if the solver
// fails at this point (treated as "no bracket here").
std::optional<double> try_eval(const SubordinationPair& sp, int side, double x,
                               const SupportSet& K) {
    try {
        return sp.omega_real_boundary(side, x, K);
    } catch (const IterationFailure&) {
        return std::nullopt;
    } catch (const BoundaryExtensionError&) {
        return std::nullopt;
    }
}

// Bisection for g(x) = target on [a, b]; g is monotone per component so the
// bracket pins a unique root. A residual check discards brackets created by a
// pole of omega rather than a genuine crossing.
std::optional<double> bisect_root(const SubordinationPair& sp, int side, double target,
                                  double a, double b, double ga, const SupportSet& K) {
    for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        double mid = 0.5 * (a + b);
        auto gm = try_eval(sp, side, mid, K);
        if (!gm) return std::nullopt;
        if ((ga - target) * (*gm - target) <= 0.0) {
            b = mid;
        } else {
            a = mid;
            ga = *gm;
        }
    }
    double root = 0.5 * (a + b);
    auto gr = try_eval(sp, side, root, K);
    if (!gr || std::abs(*gr - target) > kRootCheckTol) return std::nullopt;
    return root;
}

void search_gap(const SubordinationPair& sp, int side, int spike_index, double target,
                double lo, double hi, const SupportSet& K, std::vector<RawRoot>& out) {
    double span = hi - lo;
    if (span <= 0) return;
    double inset = std::min(1e-6, 0.01 * span);
    lo += inset;
    hi -= inset;
    if (hi <= lo) return;
    double prev_x = 0.0;
    std::optional<double> prev_g;
    for (int i = 0; i <= kSamplesPerGap; ++i) {
        double x = lo + (hi - lo) * i / kSamplesPerGap;
        auto g = try_eval(sp, side, x, K);
        if (g && prev_g && (*prev_g - target) * (*g - target) < 0.0) {
            if (auto root = bisect_root(sp, side, target, prev_x, x, *prev_g, K))
                out.push_back({*root, side, spike_index});
        } else if (g && prev_g && (*g == target || (i == 1 && *prev_g == target))) {
            out.push_back({*g == target ? x : prev_x, side, spike_index});
        }
        prev_x = x;
        prev_g = g;
    }
}

std::vector<OutlierPrediction> merge_roots(std::vector<RawRoot> roots, const SupportSet& K,
                                           bool circular) {
    std::sort(roots.begin(), roots.end(),
              [](const RawRoot& a, const RawRoot& b) { return a.rho < b.rho; });
    std::vector<OutlierPrediction> preds;
    for (std::size_t i = 0; i < roots.size();) {
        std::size_t j = i;
        double sum = 0.0;
        OutlierPrediction p;
        while (j < roots.size() && roots[j].rho - roots[i].rho <= kMergeTol) {
            sum += roots[j].rho;
            (roots[j].side == 1 ? p.sources_a : p.sources_b).push_back(roots[j].spike_index);
            ++j;
        }
        p.location = sum / static_cast<double>(j - i);
        p.multiplicity = static_cast<int>(j - i);
        preds.push_back(std::move(p));
        i = j;
    }
    // Windows from the nearest neighbor in K' = K plus the other predictions.
    for (std::size_t i = 0; i < preds.size(); ++i) {
        double d = circular ? circle_distance(K, preds[i].location)
                            : K.distance(preds[i].location);
        for (std::size_t j = 0; j < preds.size(); ++j) {
            if (j == i) continue;
            double dd = circular
                            ? circle_arg_distance(preds[i].location, preds[j].location)
                            : std::abs(preds[i].location - preds[j].location);
            d = std::min(d, dd);
        }
        preds[i].window = 0.5 * d;
    }
    return preds;
}

PredictionSet predict_real(const SpikeSchedule& sched_a, const SpikeSchedule& sched_b,
                           const SubordinationPair& sp, double eps_cut,
                           const SupportSet* precomputed_K, bool multiplicative) {
    if (eps_cut <= 0) throw PreconditionError("predict_outliers: eps_cut must be > 0");
    SupportSet K = precomputed_K ? *precomputed_K : sp.convolution_support();
    double max_abs_spike = 1.0;
    for (const auto* sched : {&sched_a, &sched_b})
        for (const auto& s : sched->spikes()) max_abs_spike = std::max(max_abs_spike, std::abs(s));
    double box_lo = K.lo() - 4.0 * max_abs_spike;
    double box_hi = K.hi() + 4.0 * max_abs_spike;
    if (multiplicative) box_lo = std::max(box_lo, 1e-6);

    SupportSet K_delta = K.fattened(eps_cut / 2.0);
    std::vector<RawRoot> roots;
    for (int side = 1; side <= 2; ++side) {
        const SpikeSchedule& sched = side == 1 ? sched_a : sched_b;
        auto spikes = sched.real_spikes();
        for (std::size_t i = 0; i < spikes.size(); ++i) {
            if (sched.spike_distance(i) <= eps_cut) continue;
            if (multiplicative && spikes[i] == 0.0)
                throw PreconditionError("predict_outliers: zero spike on the positive half-line");
            double target = multiplicative ? 1.0 / spikes[i] : spikes[i];
            for (const auto& gap : K_delta.gaps(box_lo, box_hi))
                search_gap(sp, side, static_cast<int>(i), target, gap.lo, gap.hi, K, roots);
        }
    }
    PredictionSet out;
    out.predictions = merge_roots(std::move(roots), K, false);
    out.K = std::move(K);
    return out;
}

// Argument-space search on the circle: solve arg(v_side) = -arg(theta).
void search_circle(const SubordinationPair& sp, const SpikeSchedule& sched, int side,
                   double eps_cut, const SupportSet& K, std::vector<RawRoot>& roots) {
    const double tau = 2.0 * std::numbers::pi;
    auto wrap = [](double a) {
        while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
        while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
        return a;
    };
    // Gaps of K in argument space, including the wraparound gap.
    std::vector<Interval> gaps;
    const auto& arcs = K.intervals();
    if (arcs.empty()) {
        gaps.push_back({0.0, tau});
    } else {
        for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
            gaps.push_back({arcs[i].hi, arcs[i + 1].lo});
        gaps.push_back({arcs.back().hi, arcs.front().lo + tau});
    }
    for (std::size_t i = 0; i < sched.spikes().size(); ++i) {
        if (sched.spike_distance(i) <= eps_cut) continue;
        double target = -std::arg(sched.spikes()[i]);
        auto h = [&](double phi) -> std::optional<double> {
            try {
                return wrap(std::arg(sp.omega_circle_boundary(side, phi)) - target);
            } catch (const IterationFailure&) {
                return std::nullopt;
            } catch (const BoundaryExtensionError&) {
                return std::nullopt;
            }
        };
        for (const auto& gap : gaps) {
            double span = gap.hi - gap.lo;
            if (span <= 0) continue;
            double inset = std::min(1e-6, 0.01 * span);
            double prev_phi = 0.0;
            std::optional<double> prev_h;
            for (int s = 0; s <= kSamplesPerGap; ++s) {
                double phi = gap.lo + inset + (span - 2 * inset) * s / kSamplesPerGap;
                auto hv = h(phi);
                if (hv && prev_h && *prev_h * *hv < 0.0 && std::abs(*prev_h - *hv) < std::numbers::pi) {
                    double a = prev_phi, b = phi, ha = *prev_h;
                    for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
                        double mid = 0.5 * (a + b);
                        auto hm = h(mid);
                        if (!hm) break;
                        if (ha * *hm <= 0.0) {
                            b = mid;
                        } else {
                            a = mid;
                            ha = *hm;
                        }
                    }
                    double root = std::fmod(0.5 * (a + b), tau);
                    auto hr = h(root);
                    if (hr && std::abs(*hr) < kRootCheckTol)
                        roots.push_back({root, side, static_cast<int>(i)});
                }
                prev_phi = phi;
                prev_h = hv;
            }
        }
    }
}

}  // namespace

PredictionSet predict_outliers(const SpikeSchedule& sched_a, const SpikeSchedule& sched_b,
                               const SubordinationPair& sp, double eps_cut,
                               const SupportSet* precomputed_K) {
    if (sp.type() != ConvolutionType::AdditiveReal)
        throw PreconditionError("predict_outliers: pair is not additive");
    return predict_real(sched_a, sched_b, sp, eps_cut, precomputed_K, false);
}

PredictionSet predict_outliers_multiplicative(const SpikeSchedule& sched_a,
                                              const SpikeSchedule& sched_b,
                                              const SubordinationPair& sp, double eps_cut,
                                              const SupportSet* precomputed_K) {
    if (eps_cut <= 0) throw PreconditionError("predict_outliers: eps_cut must be > 0");
    if (sp.type() == ConvolutionType::MultiplicativePositive)
        return predict_real(sched_a, sched_b, sp, eps_cut, precomputed_K, true);
    if (sp.type() != ConvolutionType::MultiplicativeUnitary)
        throw PreconditionError("predict_outliers_multiplicative: pair is additive");

    SupportSet K = precomputed_K ? *precomputed_K : sp.convolution_support();
    std::vector<RawRoot> roots;
    search_circle(sp, sched_a, 1, eps_cut, K, roots);
    search_circle(sp, sched_b, 2, eps_cut, K, roots);
    PredictionSet out;
    out.predictions = merge_roots(std::move(roots), K, true);
    out.K = std::move(K);
    return out;
}

SupportSet assemble_Kprime(const SupportSet& K, const std::vector<OutlierPrediction>& preds) {
    SupportSet out = K;
    for (const auto& p : preds) out.insert_point(p.location);
    return out;
}

}  // namespace spikelab
