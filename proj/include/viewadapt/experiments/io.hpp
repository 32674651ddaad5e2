#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "viewadapt/experiments/bench.hpp"
#include "viewadapt/experiments/sweep.hpp"

namespace viewadapt::experiments {

// Config file keys mirror ExperimentConfig; angles in degrees, bandwidths in
// Mbps. Unknown keys and bad values are reported together as ValidationError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

// Shortest representation that round-trips, '.' decimal separator.
std::string format_number(double value);

// Header: algorithm,triple,depth,fraction,class,metric,mean,stddev,trials
void write_sweep_csv(std::ostream& out, const MetricsReport& report);
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

// "150..600:150" expands to every (N, M) pair on that grid; "150x150,600x600"
// lists pairs explicitly; a bare "300" means 300x300.
std::vector<BenchSize> parse_sizes(std::string_view spec);

}  // namespace viewadapt::experiments
