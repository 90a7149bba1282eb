#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "spikelab/analysis.hpp"
#include "spikelab/measure.hpp"
#include "spikelab/outliers.hpp"
#include "spikelab/rmt.hpp"

namespace spikelab {

using json = nlohmann::json;

// Measures: {"kind": "atomic"|"semicircle"|"empirical",
//            "carrier": "real"|"positive"|"circle", ...fields}.
// Circle atoms/samples are stored as arguments in radians.
json measure_to_json(const Measure& m);
Measure measure_from_json(const json& j);

json predictions_to_json(const std::vector<OutlierPrediction>& preds);
json support_to_json(const SupportSet& s);
json report_to_json(const VerificationReport& r);

void write_eigenvalue_csv(std::ostream& os, const std::vector<double>& eigs);
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins);

// One experiment: measures, spike schedules, model, sweep sizes, trials.
struct ExperimentConfig {
    ConvolutionType model = ConvolutionType::AdditiveReal;
    json mu;  // measure definitions kept as JSON for lossless round-trips
    json nu;
    std::vector<double> a_spike_values;
    std::vector<double> b_spike_values;
    json a_generator;  // optional {"offset": o, "scale": s, "count": k}
    json b_generator;
    GrowthKind a_growth = GrowthKind::Fixed;
    GrowthKind b_growth = GrowthKind::Fixed;
    bool a_gue_bulk = false;
    bool b_gue_bulk = false;
    std::vector<int> n_values;
    int trials = 20;
    std::uint64_t seed = 0;
    double eps_cut = 0.05;
    double tolerance = 1e-12;
    double window = 0.3;
    double grid_step = 1e-3;
    double im_offset = 1e-4;
    double density_threshold = 1e-3;
    std::string out_dir = "out";

    SpikeSchedule make_schedule_a() const;
    SpikeSchedule make_schedule_b() const;
    SubordinationPair make_pair() const;
    ModelSpec make_model_spec(int n) const;
};

ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

}  // namespace spikelab
