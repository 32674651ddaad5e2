#include "viewadapt/experiments/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "viewadapt/errors.hpp"

namespace viewadapt::experiments {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "n_sites",      "cameras_per_site", "budget_fractions", "triples",
      "ladder_depths", "trials",          "seed",             "ladder_base",
      "algorithms",   "room_diameter",    "placement",        "facing",
      "bandwidth_min", "bandwidth_max",   "main_fov_deg",     "wide_fov_deg"};
  return keys;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidArgument("bad integer in size spec: " + std::string(text));
  }
  return value;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError({"<root>"});
  ExperimentConfig c;
  std::vector<std::string> bad;
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().contains(key)) bad.push_back(key);
  }

  auto field = [&](const char* key, auto&& apply) {
    if (!j.contains(key)) return;
    try {
      apply(j.at(key));
    } catch (const std::exception&) {
      bad.emplace_back(key);
    }
  };

  field("n_sites", [&](const json& v) { c.n_sites = v.get<int>(); });
  field("cameras_per_site", [&](const json& v) { c.cameras_per_site = v.get<int>(); });
  field("budget_fractions",
        [&](const json& v) { c.budget_fractions = v.get<std::vector<double>>(); });
  field("triples", [&](const json& v) {
    c.triples.clear();
    for (const auto& t : v) {
      const auto p = t.get<std::vector<double>>();
      if (p.size() != 3) throw InvalidArgument("triple needs 3 values");
      c.triples.push_back({p[0], p[1], p[2]});
    }
  });
  field("ladder_depths", [&](const json& v) { c.ladder_depths = v.get<std::vector<int>>(); });
  field("trials", [&](const json& v) { c.trials = v.get<int>(); });
  field("seed", [&](const json& v) { c.seed = v.get<std::uint64_t>(); });
  field("ladder_base", [&](const json& v) { c.ladder_base = v.get<double>(); });
  field("algorithms", [&](const json& v) {
    c.algorithms.clear();
    for (const auto& name : v) {
      auto a = adapt::parse_algorithm(name.get<std::string>());
      if (!a) throw InvalidArgument("unknown algorithm");
      c.algorithms.push_back(*a);
    }
  });
  field("room_diameter", [&](const json& v) { c.room_diameter = v.get<double>(); });
  field("placement", [&](const json& v) {
    auto p = sim::parse_placement(v.get<std::string>());
    if (!p) throw InvalidArgument("unknown placement");
    c.placement = *p;
  });
  field("facing", [&](const json& v) {
    auto f = sim::parse_facing(v.get<std::string>());
    if (!f) throw InvalidArgument("unknown facing policy");
    c.facing = *f;
  });
  field("bandwidth_min", [&](const json& v) { c.bandwidth_min = v.get<double>(); });
  field("bandwidth_max", [&](const json& v) { c.bandwidth_max = v.get<double>(); });
  field("main_fov_deg", [&](const json& v) { c.main_fov_deg = v.get<double>(); });
  field("wide_fov_deg", [&](const json& v) { c.wide_fov_deg = v.get<double>(); });

  try {
    validate(c);
  } catch (const ValidationError& e) {
    bad.insert(bad.end(), e.fields().begin(), e.fields().end());
  }
  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    throw ValidationError(std::move(bad));
  }
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json triples = json::array();
  for (const auto& t : c.triples) triples.push_back({t.p0, t.p1, t.p2});
  json algorithms = json::array();
  for (auto a : c.algorithms) algorithms.push_back(std::string(adapt::to_string(a)));
  return {
      {"n_sites", c.n_sites},
      {"cameras_per_site", c.cameras_per_site},
      {"budget_fractions", c.budget_fractions},
      {"triples", triples},
      {"ladder_depths", c.ladder_depths},
      {"trials", c.trials},
      {"seed", c.seed},
      {"ladder_base", c.ladder_base},
      {"algorithms", algorithms},
      {"room_diameter", c.room_diameter},
      {"placement", std::string(sim::to_string(c.placement))},
      {"facing", std::string(sim::to_string(c.facing))},
      {"bandwidth_min", c.bandwidth_min},
      {"bandwidth_max", c.bandwidth_max},
      {"main_fov_deg", c.main_fov_deg},
      {"wide_fov_deg", c.wide_fov_deg},
  };
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_sweep_csv(std::ostream& out, const MetricsReport& report) {
  out << "algorithm,triple,depth,fraction,class,metric,mean,stddev,trials\n";
  for (const auto& r : report.rows) {
    out << adapt::to_string(r.algorithm) << ',' << format_number(r.triple.p0) << ':'
        << format_number(r.triple.p1) << ':' << format_number(r.triple.p2) << ',' << r.depth
        << ',' << format_number(r.fraction) << ',' << r.cls << ',' << r.metric << ','
        << format_number(r.mean) << ',' << format_number(r.stddev) << ',' << r.trials << '\n';
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "sites,cameras,streams,wall_seconds,op_count,total_quality\n";
  for (const auto& r : rows) {
    out << r.size.sites << ',' << r.size.cameras << ',' << r.streams << ','
        << format_number(r.wall_seconds) << ',' << r.op_count << ','
        << format_number(r.total_quality) << '\n';
  }
}

std::vector<BenchSize> parse_sizes(std::string_view spec) {
  std::vector<BenchSize> sizes;
  if (const auto dots = spec.find(".."); dots != std::string_view::npos) {
    const auto colon = spec.find(':', dots);
    const int lo = parse_int(spec.substr(0, dots));
    const int hi = parse_int(spec.substr(dots + 2, colon == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : colon - dots - 2));
    const int step = colon == std::string_view::npos ? 1 : parse_int(spec.substr(colon + 1));
    if (lo < 1 || hi < lo || step < 1) throw InvalidArgument("bad size range: " + std::string(spec));
    for (int n = lo; n <= hi; n += step) {
      for (int m = lo; m <= hi; m += step) sizes.push_back({n, m});
    }
    return sizes;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const auto item = spec.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - pos);
    const auto x = item.find('x');
    if (x == std::string_view::npos) {
      const int n = parse_int(item);
      sizes.push_back({n, n});
    } else {
      sizes.push_back({parse_int(item.substr(0, x)), parse_int(item.substr(x + 1))});
    }
    if (sizes.back().sites < 1 || sizes.back().cameras < 1) {
      throw InvalidArgument("bench sizes must be positive: " + std::string(spec));
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return sizes;
}

}  // namespace viewadapt::experiments
