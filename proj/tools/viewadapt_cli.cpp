#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>

#include "viewadapt/errors.hpp"
#include "viewadapt/experiments/bench.hpp"
#include "viewadapt/experiments/io.hpp"
#include "viewadapt/experiments/sweep.hpp"
#include "viewadapt/service/server.hpp"

namespace {

using namespace viewadapt;

viewadapt::service::Server* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

// Writes to |path|, or stdout for "-".
template <typename Writer>
int emit(const std::string& path, Writer&& write) {
  if (path == "-") {
    write(std::cout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return 1;
  }
  write(out);
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"View-aware bandwidth adaptation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string sweep_out = "-";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  auto* sweep = app.add_subcommand("run-sweep", "Budget sweep over algorithms, triples and depths");
  sweep->add_option("--config", config_path, "JSON experiment config (defaults when omitted)");
  sweep->add_option("--out", sweep_out, "CSV output path, '-' for stdout");
  sweep->add_option("--seed", seed, "Override the config seed");
  sweep->add_option("--trials", trials, "Override the number of trials");

  std::string sizes_spec = "150..600:150";
  std::string bench_out = "-";
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "Compromise runtime scaling benchmark");
  bench->add_option("--sizes", sizes_spec, "lo..hi:step grid, or NxM[,NxM...]");
  bench->add_option("--out", bench_out, "CSV output path, '-' for stdout");
  bench->add_option("--seed", bench_seed, "Instance seed");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the session server");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port, 0 for any free port");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      auto config = config_path.empty() ? experiments::ExperimentConfig{}
                                        : experiments::load_config(config_path);
      if (seed) config.seed = *seed;
      if (trials) config.trials = *trials;
      experiments::validate(config);
      const auto report = experiments::run_sweep(config);
      return emit(sweep_out, [&](std::ostream& out) { experiments::write_sweep_csv(out, report); });
    }
    if (*bench) {
      const auto sizes = experiments::parse_sizes(sizes_spec);
      const auto rows = experiments::run_scaling_bench(sizes, bench_seed);
      const auto fit = experiments::fit_nlogn(rows);
      std::cerr << "op_count ~ " << fit.coefficient << " * n log2 n, R^2 = " << fit.r_squared
                << '\n';
      return emit(bench_out, [&](std::ostream& out) { experiments::write_bench_csv(out, rows); });
    }
    if (*serve) {
      service::Server server(std::make_shared<service::SessionManager>());
      const int bound = server.bind(host, port);
      if (bound < 0) {
        std::cerr << "error: cannot bind " << host << ":" << port << '\n';
        return 1;
      }
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      std::cerr << "listening on http://" << host << ":" << bound << '\n';
      server.listen_after_bind();
      g_server = nullptr;
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
