#include "spikelab/serialize.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "spikelab/errors.hpp"

namespace spikelab {

namespace {

std::string carrier_name(Carrier c) {
    switch (c) {
        case Carrier::RealLine: return "real";
        case Carrier::PositiveHalfLine: return "positive";
        case Carrier::UnitCircle: return "circle";
    }
    return "real";
}

Carrier carrier_from_name(const std::string& s) {
    if (s == "real") return Carrier::RealLine;
    if (s == "positive") return Carrier::PositiveHalfLine;
    if (s == "circle") return Carrier::UnitCircle;
    throw ConfigError("unknown carrier: " + s);
}

std::string model_name(ConvolutionType t) {
    switch (t) {
        case ConvolutionType::AdditiveReal: return "additive";
        case ConvolutionType::MultiplicativePositive: return "mult_positive";
        case ConvolutionType::MultiplicativeUnitary: return "mult_unitary";
    }
    return "additive";
}

ConvolutionType model_from_name(const std::string& s) {
    if (s == "additive") return ConvolutionType::AdditiveReal;
    if (s == "mult_positive") return ConvolutionType::MultiplicativePositive;
    if (s == "mult_unitary") return ConvolutionType::MultiplicativeUnitary;
    throw ConfigError("unknown model: " + s);
}

double arg_in_tau(cplx t) {
    double a = std::arg(t);
    if (a < 0) a += 2.0 * std::numbers::pi;
    return a;
}

}  // namespace

json measure_to_json(const Measure& m) {
    json j;
    j["carrier"] = carrier_name(m.carrier());
    switch (m.kind()) {
        case MeasureKind::Atomic: {
            j["kind"] = "atomic";
            json atoms = json::array();
            for (const auto& a : m.atoms()) {
                double loc = m.carrier() == Carrier::UnitCircle ? arg_in_tau(a.location)
                                                               : a.location.real();
                atoms.push_back({{"location", loc}, {"weight", a.weight}});
            }
            j["atoms"] = atoms;
            break;
        }
        case MeasureKind::Semicircle:
            j["kind"] = "semicircle";
            j["center"] = m.center();
            j["radius"] = m.radius();
            break;
        case MeasureKind::Empirical: {
            j["kind"] = "empirical";
            json samples = json::array();
            for (const auto& s : m.samples())
                samples.push_back(m.carrier() == Carrier::UnitCircle ? arg_in_tau(s) : s.real());
            j["samples"] = samples;
            break;
        }
    }
    return j;
}

Measure measure_from_json(const json& j) {
    Carrier carrier = carrier_from_name(j.value("carrier", "real"));
    std::string kind = j.at("kind");
    if (kind == "semicircle") return Measure::semicircle(j.at("center"), j.at("radius"));
    if (kind == "atomic") {
        std::vector<Atom> atoms;
        double total = 0.0;
        for (const auto& a : j.at("atoms")) {
            double loc = a.at("location");
            double w = a.at("weight");
            total += w;
            cplx location = carrier == Carrier::UnitCircle ? std::polar(1.0, loc) : cplx(loc, 0.0);
            atoms.push_back({location, w});
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("atomic measure: weights sum to " + std::to_string(total));
        return Measure::atomic(std::move(atoms), carrier);
    }
    if (kind == "empirical") {
        if (carrier == Carrier::UnitCircle) {
            std::vector<cplx> samples;
            for (double a : j.at("samples")) samples.push_back(std::polar(1.0, a));
            return Measure::empirical_circle(std::move(samples));
        }
        return Measure::empirical(j.at("samples").get<std::vector<double>>(), carrier);
    }
    throw ConfigError("unknown measure kind: " + kind);
}

json predictions_to_json(const std::vector<OutlierPrediction>& preds) {
    json out = json::array();
    for (const auto& p : preds) {
        std::string side = !p.sources_a.empty() && !p.sources_b.empty() ? "AB"
                           : !p.sources_a.empty()                       ? "A"
                                                                        : "B";
        json sources = json::array();
        for (int i : p.sources_a) sources.push_back(i);
        for (int j : p.sources_b) sources.push_back(j);
        out.push_back({{"rho", p.location},
                       {"side", side},
                       {"sources", sources},
                       {"multiplicity", p.multiplicity},
                       {"window", p.window}});
    }
    return out;
}

json support_to_json(const SupportSet& s) {
    json out = json::array();
    for (const auto& iv : s.intervals()) out.push_back({iv.lo, iv.hi});
    return out;
}

json report_to_json(const VerificationReport& r) {
    json per = json::array();
    for (const auto& w : r.per_outlier) {
        per.push_back({{"rho", w.prediction.location},
                       {"multiplicity", w.prediction.multiplicity},
                       {"observed", w.observed_count},
                       {"pass", w.pass}});
    }
    return {{"per_outlier", per},
            {"bulk_escapees", r.bulk_escapees},
            {"epsilon", r.epsilon},
            {"n", r.n},
            {"trials", r.trials},
            {"pass_fraction", r.pass_fraction}};
}

void write_eigenvalue_csv(std::ostream& os, const std::vector<double>& eigs) {
    os << "eigenvalue\n";
    os.precision(17);
    for (double e : eigs) os << e << "\n";
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
    os << "bin_center,count\n";
    os.precision(17);
    for (const auto& b : bins) os << b.center << "," << b.count << "\n";
}

namespace {

std::vector<cplx> schedule_spikes(const std::vector<double>& values, const json& generator,
                                  Carrier carrier) {
    std::vector<cplx> spikes;
    for (double v : values)
        spikes.push_back(carrier == Carrier::UnitCircle ? std::polar(1.0, v) : cplx(v, 0.0));
    if (generator.is_object()) {
        auto gen = SpikeSchedule::harmonic_spikes(generator.at("offset"), generator.at("scale"),
                                                  generator.at("count"));
        spikes.insert(spikes.end(), gen.begin(), gen.end());
    }
    return spikes;
}

GrowthKind growth_from_name(const std::string& s) {
    if (s == "fixed") return GrowthKind::Fixed;
    if (s == "sqrt") return GrowthKind::Sqrt;
    throw ConfigError("unknown growth kind: " + s);
}

std::string growth_name(GrowthKind g) {
    return g == GrowthKind::Fixed ? "fixed" : "sqrt";
}

}  // namespace

SpikeSchedule ExperimentConfig::make_schedule_a() const {
    Measure base = measure_from_json(mu);
    SpikeSchedule s(schedule_spikes(a_spike_values, a_generator, base.carrier()), base, a_growth);
    if (a_gue_bulk) s.set_gue_bulk(true);
    return s;
}

SpikeSchedule ExperimentConfig::make_schedule_b() const {
    Measure base = measure_from_json(nu);
    SpikeSchedule s(schedule_spikes(b_spike_values, b_generator, base.carrier()), base, b_growth);
    if (b_gue_bulk) s.set_gue_bulk(true);
    return s;
}

SubordinationPair ExperimentConfig::make_pair() const {
    return SubordinationPair(model, measure_from_json(mu), measure_from_json(nu), tolerance);
}

ModelSpec ExperimentConfig::make_model_spec(int n) const {
    ModelSpec spec{model, make_schedule_a(), make_schedule_b(), n, seed};
    spec.validate();
    return spec;
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig c;
    try {
        c.model = model_from_name(j.at("model"));
        c.mu = j.at("measures").at("mu");
        c.nu = j.at("measures").at("nu");
        measure_from_json(c.mu);  // validate now, fail early
        measure_from_json(c.nu);
        auto read_side = [&](const char* key, std::vector<double>& values, json& generator,
                             GrowthKind& growth, bool& gue) {
            if (!j.contains(key)) return;
            const json& side = j.at(key);
            values = side.value("values", std::vector<double>{});
            if (side.contains("generator")) generator = side.at("generator");
            growth = growth_from_name(side.value("growth", "fixed"));
            gue = side.value("gue_bulk", false);
        };
        read_side("a_spikes", c.a_spike_values, c.a_generator, c.a_growth, c.a_gue_bulk);
        read_side("b_spikes", c.b_spike_values, c.b_generator, c.b_growth, c.b_gue_bulk);
        c.n_values = j.value("n_values", std::vector<int>{1000});
        for (std::size_t i = 1; i < c.n_values.size(); ++i)
            if (c.n_values[i] <= c.n_values[i - 1])
                throw ConfigError("n_values must be strictly increasing");
        c.trials = j.value("trials", 20);
        c.seed = j.value("seed", std::uint64_t{0});
        c.eps_cut = j.value("eps_cut", 0.05);
        c.tolerance = j.value("tolerance", 1e-12);
        c.window = j.value("window", 0.3);
        c.grid_step = j.value("grid_step", 1e-3);
        c.im_offset = j.value("im_offset", 1e-4);
        c.density_threshold = j.value("density_threshold", 1e-3);
        c.out_dir = j.value("out_dir", std::string("out"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["model"] = model_name(c.model);
    j["measures"] = {{"mu", c.mu}, {"nu", c.nu}};
    auto side_json = [](const std::vector<double>& values, const json& generator, GrowthKind g,
                        bool gue) {
        json s;
        s["values"] = values;
        if (generator.is_object()) s["generator"] = generator;
        s["growth"] = growth_name(g);
        s["gue_bulk"] = gue;
        return s;
    };
    j["a_spikes"] = side_json(c.a_spike_values, c.a_generator, c.a_growth, c.a_gue_bulk);
    j["b_spikes"] = side_json(c.b_spike_values, c.b_generator, c.b_growth, c.b_gue_bulk);
    j["n_values"] = c.n_values;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["eps_cut"] = c.eps_cut;
    j["tolerance"] = c.tolerance;
    j["window"] = c.window;
    j["grid_step"] = c.grid_step;
    j["im_offset"] = c.im_offset;
    j["density_threshold"] = c.density_threshold;
    j["out_dir"] = c.out_dir;
    return j;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

}  // namespace spikelab
