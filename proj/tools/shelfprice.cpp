// shelfprice: command-line front end for the solver library.
//
// Exit codes: 0 success, 1 domain failure (budget, overflow, timeout,
// unsupported model, failed certificate), 2 usage or input error.

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "shelfprice/shelfprice.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shelfprice;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned threads = 0;
  std::string report = "text";
  bool no_timing = false;

  bool json() const { return report == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << text;
  spdlog::info("wrote {}", path.string());
}

Instance read_instance(const std::string& path) { return load_instance(read_file(path)); }

std::string join(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out;
}

const char* to_string(Reconstruction r) {
  switch (r) {
    case Reconstruction::automatic: return "automatic";
    case Reconstruction::store_argmax: return "store_argmax";
    case Reconstruction::checkpoint: return "checkpoint";
  }
  return "";
}

void print_solve(const Common& common, const std::string& model, const SolveResult& r) {
  const double wall = common.no_timing ? 0.0 : r.stats.wall_ms;
  if (common.json()) {
    json out{{"model", model},
             {"prices", schedule_to_json(r.prices)},
             {"outcome", outcome_to_json(r.outcome)},
             {"plan", plan_to_json(r.plan)},
             {"stats",
              {{"states", r.stats.states},
               {"transitions", r.stats.transitions},
               {"largest_layer", r.stats.largest_layer},
               {"recomputed_layers", r.stats.recomputed_layers},
               {"reconstruction", to_string(r.stats.reconstruction)},
               {"wall_ms", wall}}}};
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "model: " << model << "\n"
            << "prices: " << r.prices.to_string() << "\n"
            << "revenue: " << r.outcome.revenue.to_string() << "\n"
            << "utility: " << r.outcome.buyer_utility.to_string() << "\n"
            << "quantities: " << join(r.outcome.quantities) << "\n"
            << "states: " << r.stats.states << "\n"
            << "transitions: " << r.stats.transitions << "\n"
            << "largest layer: " << r.stats.largest_layer << "\n"
            << "reconstruction: " << to_string(r.stats.reconstruction) << "\n"
            << "wall ms: " << wall << "\n";
}

void print_plan_text(const PurchasePlan& plan) {
  std::cout << "plan (unit, consumption day, purchase day):\n";
  for (int t = 0; t < plan.days(); ++t)
    for (int i = 0; i < plan.units(); ++i) {
      std::cout << "  " << i + 1 << " " << t + 1 << " ";
      if (auto s = plan.purchase_day(i, t)) std::cout << *s + 1 << "\n";
      else std::cout << "-\n";
    }
}

int print_bounds(const Common& common, const BoundReport& report) {
  if (common.json()) std::cout << report.to_json().dump(2) << "\n";
  else std::cout << report.to_text();
  return report.passed() ? kOk : kDomain;
}

PriceSchedule parse_prices(const std::string& text) {
  PriceSchedule schedule;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      schedule.prices.push_back(Money::parse(item));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad price '" + item + "'");
    }
  }
  return schedule;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("shelfprice");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("SHELFPRICE_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Exact pricing solvers for goods with a limited shelf-life"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0 = all cores)");
  app.add_option("--report", common.report, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--no-timing", common.no_timing, "Report wall times as 0");

  // solve
  auto* solve = app.add_subcommand("solve", "Optimal price schedule");
  std::string instance_path, model = "cliff";
  std::size_t memory_cap = std::size_t{1} << 30;
  double timeout = 0;
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--model", model)->check(CLI::IsMember({"cliff", "infinite"}));
  solve->add_option("--memory-cap", memory_cap, "Bytes allowed for the argmax table before checkpointing");
  solve->add_option("--timeout", timeout, "Seconds before the DP gives up (0 = none)");

  // respond
  auto* respond = app.add_subcommand("respond", "Buyer best response to a schedule");
  std::string prices_text;
  respond->add_option("--instance", instance_path)->required();
  respond->add_option("--prices", prices_text, "Comma-separated prices")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search over the candidate grid");
  std::uint64_t budget = 10'000'000;
  bool pareto = false;
  oracle->add_option("--instance", instance_path)->required();
  oracle->add_option("--budget", budget, "Largest number of schedules to enumerate");
  oracle->add_flag("--pareto", pareto, "List the revenue/utility Pareto front");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Certify revenue bounds");
  bounds->require_subcommand(1);
  auto* lower = bounds->add_subcommand("lower", "d * OPT >= M on a cliff instance");
  lower->add_option("--instance", instance_path)->required();
  auto* adversarial = bounds->add_subcommand("adversarial", "Upper bound on the adversarial family");
  AdversarialConfig adv;
  adversarial->add_option("--a", adv.a)->required();
  adversarial->add_option("--d", adv.d)->required();
  adversarial->add_option("--k", adv.k)->required();
  auto* fractional = bounds->add_subcommand("fractional", "(1 - r) M / d lower bound");
  fractional->add_option("--instance", instance_path)->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Sweeps and figure data");
  experiment->require_subcommand(1);
  auto* sweep = experiment->add_subcommand("sweep", "Run a storage-cost / shelf-life sweep");
  std::string config_path, out_path;
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--out", out_path, "Output directory")->required();
  auto* plot = experiment->add_subcommand("plot", "Chart a sweep CSV");
  std::string csv_path, figure_name;
  plot->add_option("--csv", csv_path)->required();
  plot->add_option("--figure", figure_name)
      ->required()
      ->check(CLI::IsMember({"profit_vs_cost", "utility_vs_cost", "utility_vs_duration"}));
  plot->add_option("--out", out_path, "SVG file; the CSV goes next to it")->required();
  auto* sample = experiment->add_subcommand("sample", "Print one sampled instance");
  std::uint64_t seed = 0;
  double variance = 5;
  int sample_d = 2;
  std::string sample_cost = "0";
  sample->add_option("--seed", seed)->required();
  sample->add_option("--config", config_path, "Sweep config supplying N, T and the distributions");
  sample->add_option("--variance", variance, "Daily variance");
  sample->add_option("--d", sample_d, "Shelf-life of the emitted instance");
  sample->add_option("--c", sample_cost, "Storage cost of the emitted instance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) {
      const Instance instance = read_instance(instance_path);
      spdlog::info("solving N={} T={} {} c={}", instance.units(), instance.days(), instance.decay().describe(),
                   instance.storage_cost().to_string());
      SolveResult result;
      if (model == "infinite") {
        result = solve_no_storage(instance, {common.threads});
      } else {
        DpOptions dp;
        dp.threads = common.threads;
        dp.memory_cap_bytes = memory_cap;
        if (timeout > 0)
          dp.deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
        result = solve_cliff(instance, dp);
      }
      print_solve(common, model, result);
    } else if (*respond) {
      const Instance instance = read_instance(instance_path);
      const PriceSchedule prices = parse_prices(prices_text);
      PurchasePlan plan;
      const Outcome outcome = respond_and_evaluate(instance, prices, &plan);
      if (common.json()) {
        std::cout << json{{"prices", schedule_to_json(prices)}, {"plan", plan_to_json(plan)}, {"outcome", outcome_to_json(outcome)}}
                         .dump(2)
                  << "\n";
      } else {
        print_plan_text(plan);
        std::cout << "quantities: " << join(outcome.quantities) << "\n"
                  << "revenue: " << outcome.revenue.to_string() << "\n"
                  << "utility: " << outcome.buyer_utility.to_string() << "\n";
      }
    } else if (*oracle) {
      const Instance instance = read_instance(instance_path);
      const CandidateSet grid = oracle_grid(instance);
      const OracleOptions options{budget, common.threads};
      if (pareto) {
        const auto front = oracle_pareto(instance, grid, options);
        if (common.json()) {
          json out = json::array();
          for (const auto& p : front) out.push_back({{"revenue", p.revenue.to_string()}, {"utility", p.utility.to_string()}});
          std::cout << out.dump(2) << "\n";
        } else {
          std::cout << "revenue,utility\n";
          for (const auto& p : front) std::cout << p.revenue.to_string() << "," << p.utility.to_string() << "\n";
        }
      } else {
        const auto r = oracle_optimal(instance, grid, options);
        if (common.json()) {
          std::cout << json{{"prices", schedule_to_json(r.prices)},
                            {"outcome", outcome_to_json(r.outcome)},
                            {"plan", plan_to_json(r.plan)},
                            {"schedules", r.schedules}}
                           .dump(2)
                    << "\n";
        } else {
          std::cout << "prices: " << r.prices.to_string() << "\n"
                    << "revenue: " << r.outcome.revenue.to_string() << "\n"
                    << "utility: " << r.outcome.buyer_utility.to_string() << "\n"
                    << "quantities: " << join(r.outcome.quantities) << "\n"
                    << "schedules: " << r.schedules << "\n";
        }
      }
    } else if (*bounds) {
      CertifyOptions options;
      options.threads = common.threads;
      if (*lower) return print_bounds(common, certify_lower_bound(read_instance(instance_path), options));
      if (*adversarial) return print_bounds(common, certify_upper_bound(adv, options));
      return print_bounds(common, certify_fractional_bounds(read_instance(instance_path), options));
    } else if (*sweep) {
      SweepConfig config = load_sweep_config(read_file(config_path));
      if (common.no_timing) config.record_timing = false;
      spdlog::info("sweep: {} seeds x {} variances x {} durations x {} costs", config.seeds.size(),
                   config.daily_variances.size(), config.durations.size(), config.costs.size());
      const auto rows = run_sweep(config, {common.threads});
      const fs::path dir(out_path);
      fs::create_directories(dir);
      write_file(dir / "sweep.csv", sweep_csv(rows));
      write_file(dir / "schedules.csv", schedules_csv(rows));
      write_file(dir / "averages.csv", averages_csv(average_rows(rows)));
      const json summary = sweep_summary(rows);
      write_file(dir / "summary.json", summary.dump(2) + "\n");
      for (auto f : {Figure::profit_vs_cost, Figure::utility_vs_cost, Figure::utility_vs_duration}) {
        const auto fig = emit_figure_data(rows, f);
        write_file(dir / (std::string(to_string(f)) + ".csv"), fig.csv);
        write_file(dir / (std::string(to_string(f)) + ".svg"), fig.svg);
      }
      std::size_t timeouts = 0;
      for (const auto& r : rows) timeouts += r.status == CellStatus::timeout;
      if (common.json()) std::cout << json{{"rows", rows.size()}, {"timeouts", timeouts}, {"summary", summary}}.dump(2) << "\n";
      else std::cout << "rows: " << rows.size() << "\ntimeouts: " << timeouts << "\n";
    } else if (*plot) {
      const auto rows = parse_sweep_csv(read_file(csv_path));
      const auto fig = emit_figure_data(rows, *parse_figure(figure_name));
      const fs::path svg(out_path);
      if (svg.has_parent_path()) fs::create_directories(svg.parent_path());
      write_file(svg, fig.svg);
      fs::path csv = svg;
      write_file(csv.replace_extension(".csv"), fig.csv);
      for (const auto& m : fig.missing) spdlog::warn("missing series {}", m);
      std::cout << "series: " << fig.series.size() << "\nmissing: " << fig.missing.size() << "\n";
    } else if (*sample) {
      SweepConfig config;
      if (!config_path.empty()) config = load_sweep_config(read_file(config_path));
      const Instance base = sample_instance(config, variance, seed);
      const Instance instance =
          base.with_decay(DecayProfile::cliff(sample_d)).with_storage_cost(Money::parse(sample_cost));
      std::cout << save_instance(instance) << "\n";
    }
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const InstanceError& e) {
    spdlog::error("invalid input: {}", e.what());
    return kUsage;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kDomain;
  } catch (const std::invalid_argument& e) {
    spdlog::error("invalid argument: {}", e.what());
    return kUsage;
  }
  return kOk;
}
