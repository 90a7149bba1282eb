#include "spikelab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

constexpr double kWeightTol = 1e-12;
constexpr double kCarrierTol = 1e-12;

double arg_in_tau(cplx t) {
    double a = std::arg(t);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
}

// Principal-branch sqrt((z-a)(z+a)) with G ~ 1/z enforced at infinity.
cplx edge_sqrt(cplx z, double a) { return std::sqrt(z - a) * std::sqrt(z + a); }

}  // namespace

Measure Measure::atomic(std::vector<Atom> atoms, Carrier carrier) {
    Measure m;
    m.kind_ = MeasureKind::Atomic;
    m.carrier_ = carrier;
    m.atoms_ = std::move(atoms);
    if (carrier == Carrier::UnitCircle) {
        for (auto& a : m.atoms_) {
            double mod = std::abs(a.location);
            if (std::abs(mod - 1.0) > kCarrierTol)
                throw PreconditionError("atomic: unit-circle atom with modulus != 1");
            a.location /= mod;
        }
    }
    m.validate();
    return m;
}

Measure Measure::point_mass(double location, Carrier carrier) {
    if (carrier == Carrier::UnitCircle)
        return atomic({{std::polar(1.0, location), 1.0}}, carrier);
    return atomic({{cplx(location, 0.0), 1.0}}, carrier);
}

Measure Measure::semicircle(double center, double radius) {
    if (radius <= 0) throw PreconditionError("semicircle: radius must be > 0");
    Measure m;
    m.kind_ = MeasureKind::Semicircle;
    m.carrier_ = center - radius >= 0 ? Carrier::PositiveHalfLine : Carrier::RealLine;
    m.center_ = center;
    m.radius_ = radius;
    return m;
}

Measure Measure::empirical(std::vector<double> samples, Carrier carrier) {
    if (samples.empty()) throw PreconditionError("empirical: no samples");
    Measure m;
    m.kind_ = MeasureKind::Empirical;
    m.carrier_ = carrier;
    m.samples_.reserve(samples.size());
    for (double s : samples) m.samples_.emplace_back(s, 0.0);
    m.validate();
    return m;
}

Measure Measure::empirical_circle(std::vector<cplx> samples) {
    if (samples.empty()) throw PreconditionError("empirical: no samples");
    Measure m;
    m.kind_ = MeasureKind::Empirical;
    m.carrier_ = Carrier::UnitCircle;
    m.samples_ = std::move(samples);
    for (auto& s : m.samples_) {
        double mod = std::abs(s);
        if (std::abs(mod - 1.0) > kCarrierTol)
            throw PreconditionError("empirical: circle sample with modulus != 1");
        s /= mod;
    }
    return m;
}

void Measure::validate() const {
    if (kind_ == MeasureKind::Atomic) {
        if (atoms_.empty()) throw PreconditionError("atomic: no atoms");
        double total = 0.0;
        for (const auto& a : atoms_) {
            if (a.weight <= 0 || a.weight > 1.0 + kWeightTol)
                throw PreconditionError("atomic: weight outside (0, 1]");
            total += a.weight;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw PreconditionError("atomic: weights do not sum to 1");
    }
    auto check_loc = [this](cplx t) {
        if (carrier_ == Carrier::PositiveHalfLine && t.real() < -kCarrierTol)
            throw PreconditionError("measure: negative location on the positive half-line");
        if (carrier_ != Carrier::UnitCircle && std::abs(t.imag()) > kCarrierTol)
            throw PreconditionError("measure: complex location on a real carrier");
    };
    for (const auto& a : atoms_) check_loc(a.location);
    for (const auto& s : samples_) check_loc(s);
}

SupportSet Measure::support() const {
    std::vector<Interval> ivs;
    switch (kind_) {
        case MeasureKind::Semicircle:
            ivs.push_back({center_ - radius_, center_ + radius_});
            break;
        case MeasureKind::Atomic:
            for (const auto& a : atoms_) {
                double x = carrier_ == Carrier::UnitCircle ? arg_in_tau(a.location)
                                                          : a.location.real();
                ivs.push_back({x, x});
            }
            break;
        case MeasureKind::Empirical: {
            if (carrier_ == Carrier::UnitCircle) {
                for (const auto& s : samples_) {
                    double x = arg_in_tau(s);
                    ivs.push_back({x, x});
                }
            } else {
                double lo = samples_.front().real(), hi = lo;
                for (const auto& s : samples_) {
                    lo = std::min(lo, s.real());
                    hi = std::max(hi, s.real());
                }
                ivs.push_back({lo, hi});
            }
            break;
        }
    }
    return SupportSet(std::move(ivs));
}

cplx Measure::cauchy_transform(cplx z) const {
    if (kind_ == MeasureKind::Semicircle) {
        cplx w = z - center_;
        if (w.imag() == 0.0 && std::abs(w.real()) < radius_)
            throw DomainError("cauchy_transform: real z inside the semicircle support");
        // G(z) = 2 (w - sqrt(w^2 - r^2)) / r^2; the equivalent form below
        // avoids cancellation for large |w| and keeps the decaying branch.
        return 2.0 / (w + edge_sqrt(w, radius_));
    }
    cplx g = 0.0;
    auto add = [&](cplx t, double w) {
        cplx d = z - t;
        if (d == 0.0) throw DomainError("cauchy_transform: z coincides with an atom");
        g += w / d;
    };
    if (kind_ == MeasureKind::Atomic) {
        for (const auto& a : atoms_) add(a.location, a.weight);
    } else {
        double w = 1.0 / static_cast<double>(samples_.size());
        for (const auto& s : samples_) add(s, w);
    }
    return g;
}

cplx Measure::f_transform(cplx z) const {
    cplx g = cauchy_transform(z);
    if (g == 0.0) throw PoleError("f_transform: G(z) = 0");
    return 1.0 / g;
}

cplx Measure::h_transform(cplx z) const { return f_transform(z) - z; }

cplx Measure::psi_transform(cplx z) const {
    if (z == 0.0) return 0.0;
    if (kind_ == MeasureKind::Semicircle) return cauchy_transform(1.0 / z) / z - 1.0;
    cplx p = 0.0;
    auto add = [&](cplx t, double w) {
        cplx d = 1.0 - t * z;
        if (d == 0.0) throw DomainError("psi_transform: 1/z coincides with an atom");
        p += w * t * z / d;
    };
    if (kind_ == MeasureKind::Atomic) {
        for (const auto& a : atoms_) add(a.location, a.weight);
    } else {
        double w = 1.0 / static_cast<double>(samples_.size());
        for (const auto& s : samples_) add(s, w);
    }
    return p;
}

cplx Measure::eta_transform(cplx z) const {
    cplx p = psi_transform(z);
    cplx d = 1.0 + p;
    if (d == 0.0) throw PoleError("eta_transform: 1 + psi(z) = 0");
    return p / d;
}

double Measure::quantile(double p) const {
    if (p <= 0 || p >= 1) throw PreconditionError("quantile: p must be in (0, 1)");
    if (carrier_ == Carrier::UnitCircle)
        throw PreconditionError("quantile: use circle_quantile for the unit circle");
    switch (kind_) {
        case MeasureKind::Atomic: {
            std::vector<Atom> sorted = atoms_;
            std::sort(sorted.begin(), sorted.end(),
                      [](const Atom& a, const Atom& b) { return a.location.real() < b.location.real(); });
            double cum = 0.0;
            for (const auto& a : sorted) {
                cum += a.weight;
                if (cum >= p - kWeightTol) return a.location.real();
            }
            return sorted.back().location.real();
        }
        case MeasureKind::Empirical: {
            std::vector<double> xs;
            xs.reserve(samples_.size());
            for (const auto& s : samples_) xs.push_back(s.real());
            std::sort(xs.begin(), xs.end());
            auto idx = static_cast<std::size_t>(p * static_cast<double>(xs.size()));
            return xs[std::min(idx, xs.size() - 1)];
        }
        case MeasureKind::Semicircle: {
            // CDF(x) = 1/2 + x sqrt(r^2-x^2)/(pi r^2) + asin(x/r)/pi, centered.
            auto cdf = [this](double x) {
                double r = radius_;
                return 0.5 + x * std::sqrt(r * r - x * x) / (std::numbers::pi * r * r) +
                       std::asin(x / r) / std::numbers::pi;
            };
            double lo = -radius_, hi = radius_;
            for (int i = 0; i < 80; ++i) {
                double mid = 0.5 * (lo + hi);
                (cdf(mid) < p ? lo : hi) = mid;
            }
            return center_ + 0.5 * (lo + hi);
        }
    }
    throw NumericalError("quantile: unreachable");
}

cplx Measure::circle_quantile(double p) const {
    if (p <= 0 || p >= 1) throw PreconditionError("circle_quantile: p must be in (0, 1)");
    if (carrier_ != Carrier::UnitCircle)
        throw PreconditionError("circle_quantile: measure is not on the unit circle");
    std::vector<Atom> sorted;
    if (kind_ == MeasureKind::Atomic) {
        sorted = atoms_;
    } else {
        double w = 1.0 / static_cast<double>(samples_.size());
        for (const auto& s : samples_) sorted.push_back({s, w});
    }
    std::sort(sorted.begin(), sorted.end(),
              [](const Atom& a, const Atom& b) { return arg_in_tau(a.location) < arg_in_tau(b.location); });
    double cum = 0.0;
    for (const auto& a : sorted) {
        cum += a.weight;
        if (cum >= p - kWeightTol) return a.location;
    }
    return sorted.back().location;
}

cplx Measure::first_moment() const {
    switch (kind_) {
        case MeasureKind::Semicircle:
            return center_;
        case MeasureKind::Atomic: {
            cplx m = 0.0;
            for (const auto& a : atoms_) m += a.weight * a.location;
            return m;
        }
        case MeasureKind::Empirical: {
            cplx m = std::accumulate(samples_.begin(), samples_.end(), cplx(0.0));
            return m / static_cast<double>(samples_.size());
        }
    }
    throw NumericalError("first_moment: unreachable");
}

bool Measure::same_atoms(const Measure& other, double loc_tol) const {
    if (kind_ != MeasureKind::Atomic || other.kind_ != MeasureKind::Atomic) return false;
    if (atoms_.size() != other.atoms_.size()) return false;
    auto key = [](const Atom& a, const Atom& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    };
    std::vector<Atom> lhs = atoms_, rhs = other.atoms_;
    std::sort(lhs.begin(), lhs.end(), key);
    std::sort(rhs.begin(), rhs.end(), key);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        if (std::abs(lhs[i].location - rhs[i].location) > loc_tol) return false;
        if (std::abs(lhs[i].weight - rhs[i].weight) > loc_tol) return false;
    }
    return true;
}

double total_variation_distance(const Measure& a, const Measure& b) {
    auto atoms_of = [](const Measure& m) {
        if (m.kind() == MeasureKind::Atomic) return m.atoms();
        if (m.kind() == MeasureKind::Empirical) {
            std::vector<Atom> out;
            double w = 1.0 / static_cast<double>(m.samples().size());
            for (const auto& s : m.samples()) out.push_back({s, w});
            return out;
        }
        throw PreconditionError("total_variation_distance: measures must be atomic or empirical");
    };
    constexpr double tol = 1e-10;
    struct Entry {
        cplx loc;
        double wa, wb;
    };
    std::vector<Entry> entries;
    auto accumulate = [&](const std::vector<Atom>& atoms, bool first) {
        for (const auto& at : atoms) {
            auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) {
                return std::abs(e.loc - at.location) <= tol;
            });
            if (it == entries.end()) {
                entries.push_back({at.location, first ? at.weight : 0.0, first ? 0.0 : at.weight});
            } else {
                (first ? it->wa : it->wb) += at.weight;
            }
        }
    };
    accumulate(atoms_of(a), true);
    accumulate(atoms_of(b), false);
    double tv = 0.0;
    for (const auto& e : entries) tv += std::abs(e.wa - e.wb);
    return 0.5 * tv;
}

}  // namespace spikelab
