#pragma once

// Seeded storage-cost and shelf-life sweeps.
//
// A sweep draws one valuation matrix per (seed, daily variance) and solves
// it for every (duration, cost) cell: cliff durations go through the DP,
// the "infinite" duration through the no-storage baseline. Rows come back
// sorted by key, so the emitted CSV does not depend on how cells were
// scheduled across workers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "shelfprice/baseline.hpp"
#include "shelfprice/dp_solver.hpp"
#include "shelfprice/io.hpp"
#include "shelfprice/parallel.hpp"

namespace shelfprice {

struct SweepConfig {
  int units = 5;
  int days = 20;
  double base_mean = 30;
  double base_variance = 10;
  std::vector<double> daily_variances{2, 5};
  std::vector<Money> costs;
  /// Shelf-lives in days; std::nullopt is the unlimited ("infinite") model.
  std::vector<std::optional<int>> durations{2, 3, 4, std::nullopt};
  std::vector<std::uint64_t> seeds;
  /// Read the variance fields as standard deviations instead.
  bool stddev = false;
  /// Sampled values are rounded to a multiple of this amount.
  Money quantum = Money::from_raw(1);
  BuyerMode mode = BuyerMode::multi;
  std::optional<double> timeout_seconds;
  bool record_timing = true;
};

enum class CellStatus { ok, timeout };

inline const char* to_string(CellStatus s) { return s == CellStatus::ok ? "ok" : "timeout"; }

struct SweepRow {
  std::uint64_t seed = 0;
  int units = 0;
  int days = 0;
  double variance = 0;
  std::optional<int> duration;  // nullopt: infinite
  Money cost;
  Money revenue;
  FineMoney utility;
  double wall_ms = 0;
  CellStatus status = CellStatus::ok;
  PriceSchedule prices;
  std::uint64_t states = 0;

  bool infinite() const { return !duration.has_value(); }
};

namespace detail {

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Marsaglia polar method. std::normal_distribution is implementation
// defined, so it would not give the same matrices on every platform.
class PortableNormal {
 public:
  double operator()(std::mt19937_64& rng, double mean, double sd) {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return mean + sd * z;
    }
    double u, v, s;
    do {
      u = 2 * unit_uniform(rng) - 1;
      v = 2 * unit_uniform(rng) - 1;
      s = u * u + v * v;
    } while (s >= 1 || s == 0);
    const double f = std::sqrt(-2 * std::log(s) / s);
    spare_ = v * f;
    return mean + sd * u * f;
  }

 private:
  std::optional<double> spare_;
};

inline Money quantize(double value, Money quantum) {
  if (!(value > 0)) return Money{};
  const double steps = std::nearbyint(value / quantum.to_double());
  if (steps > 1e15) throw PrecisionOverflow("sampled value too large for Money");
  return quantum * static_cast<std::int64_t>(steps);
}

inline int duration_order(const std::optional<int>& d) { return d ? *d : std::numeric_limits<int>::max(); }

inline auto row_key(const SweepRow& r) { return std::tuple(r.seed, r.variance, duration_order(r.duration), r.cost); }

inline std::string format_variance(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

template <typename Raw>
Raw rounded_div(Raw sum, Raw n) {
  const Raw q = sum / n, r = sum % n;
  if (2 * (r < 0 ? -r : r) >= n) return q + (sum < 0 ? -1 : 1);
  return q;
}

}  // namespace detail

/// One valuation matrix: a base value per buyer, then every day's value
/// drawn around that base, negatives truncated to 0 and rounded to the
/// quantum. Every day is sorted descending.
inline Instance sample_instance(const SweepConfig& config, double daily_variance, std::uint64_t seed) {
  if (config.units < 1 || config.days < 1) throw InstanceError("sweep needs N >= 1 and T >= 1");
  if (config.base_variance < 0 || daily_variance < 0) throw InstanceError("variances must be non-negative");
  if (config.quantum <= Money{}) throw InstanceError("quantum must be positive");
  const auto spread = [&](double v) { return config.stddev ? v : std::sqrt(v); };
  std::mt19937_64 rng(seed);
  detail::PortableNormal normal;
  std::vector<double> base(static_cast<std::size_t>(config.units));
  for (auto& b : base) b = normal(rng, config.base_mean, spread(config.base_variance));
  std::vector<std::vector<Money>> rows(static_cast<std::size_t>(config.days));
  for (auto& row : rows) {
    for (double b : base) row.push_back(detail::quantize(normal(rng, b, spread(daily_variance)), config.quantum));
    // In single-buyer mode draw i becomes the i-th marginal unit.
    std::sort(row.begin(), row.end(), std::greater<>{});
  }
  return Instance(ValuationMatrix::from_days(rows, false), DecayProfile::cliff(1), Money{}, config.mode);
}

struct SweepOptions {
  unsigned threads = 0;
};

/// Solves every (seed, variance, duration, cost) cell. A cell whose solve
/// exceeds timeout_seconds is kept with status "timeout".
inline std::vector<SweepRow> run_sweep(const SweepConfig& config, const SweepOptions& options = {}) {
  struct Cell {
    std::size_t matrix;
    std::optional<int> duration;
    Money cost;
  };
  std::vector<std::pair<std::uint64_t, double>> draws;
  std::vector<Instance> matrices;
  std::vector<Cell> cells;
  if (config.costs.empty()) return {};
  for (auto seed : config.seeds)
    for (double variance : config.daily_variances) {
      matrices.push_back(sample_instance(config, variance, seed));
      draws.emplace_back(seed, variance);
      for (const auto& d : config.durations)
        for (Money c : config.costs) cells.push_back({matrices.size() - 1, d, c});
    }
  for (const auto& d : config.durations)
    if (d && *d < 1) throw InstanceError("durations must be >= 1");
  for (Money c : config.costs)
    if (c < Money{}) throw InstanceError("costs must be non-negative");

  std::vector<SweepRow> rows(cells.size());
  parallel_chunks(cells.size(), cells.size(), options.threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Cell& cell = cells[i];
      const Instance& base = matrices[cell.matrix];
      SweepRow& row = rows[i];
      row.seed = draws[cell.matrix].first;
      row.variance = draws[cell.matrix].second;
      row.units = base.units();
      row.days = base.days();
      row.duration = cell.duration;
      row.cost = cell.cost;
      const auto start = std::chrono::steady_clock::now();
      try {
        SolveResult solved;
        if (cell.duration) {
          DpOptions dp;
          dp.threads = 1;
          if (config.timeout_seconds)
            dp.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                      std::chrono::duration<double>(*config.timeout_seconds));
          const Instance inst = base.with_decay(DecayProfile::cliff(*cell.duration)).with_storage_cost(cell.cost);
          solved = solve_cliff(inst, dp);
        } else {
          solved = solve_no_storage(base.with_storage_cost(cell.cost), {1});
        }
        row.revenue = solved.outcome.revenue;
        row.utility = solved.outcome.buyer_utility;
        row.prices = solved.prices;
        row.states = solved.stats.states;
      } catch (const SolveTimeout&) {
        row.status = CellStatus::timeout;
      }
      if (config.record_timing)
        row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  });
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return detail::row_key(a) < detail::row_key(b); });
  return rows;
}

inline const char* sweep_csv_header() { return "seed,N,T,variance,model,d,c,revenue,utility,wall_ms,status"; }

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = std::string(sweep_csv_header()) + "\n";
  char wall[32];
  for (const auto& r : rows) {
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    const bool ok = r.status == CellStatus::ok;
    out += std::to_string(r.seed) + "," + std::to_string(r.units) + "," + std::to_string(r.days) + "," +
           detail::format_variance(r.variance) + "," + (r.infinite() ? "infinite" : "cliff") + "," +
           (r.infinite() ? "inf" : std::to_string(*r.duration)) + "," + r.cost.to_string() + "," +
           (ok ? r.revenue.to_string() : "") + "," + (ok ? r.utility.to_string() : "") + "," + wall + "," +
           to_string(r.status) + "\n";
  }
  return out;
}

/// Schedules and state counts, one line per row of sweep_csv.
inline std::string schedules_csv(const std::vector<SweepRow>& rows) {
  std::string out = "seed,variance,d,c,states,prices\n";
  for (const auto& r : rows)
    out += std::to_string(r.seed) + "," + detail::format_variance(r.variance) + "," +
           (r.infinite() ? "inf" : std::to_string(*r.duration)) + "," + r.cost.to_string() + "," +
           std::to_string(r.states) + "," + (r.status == CellStatus::ok ? "\"" + r.prices.to_string() + "\"" : "") +
           "\n";
  return out;
}

/// Parses a CSV written by sweep_csv. Schedules and state counts are not
/// part of that file and stay empty.
inline std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != sweep_csv_header()) throw InstanceError("sweep CSV: unexpected header");
  std::vector<SweepRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw InstanceError("sweep CSV line " + std::to_string(line_no) + ": expected 11 fields");
    try {
      SweepRow r;
      r.seed = std::stoull(f[0]);
      r.units = std::stoi(f[1]);
      r.days = std::stoi(f[2]);
      r.variance = std::stod(f[3]);
      if (f[4] == "cliff") r.duration = std::stoi(f[5]);
      else if (f[4] != "infinite") throw std::invalid_argument("model");
      r.cost = Money::parse(f[6]);
      if (f[10] == "ok") {
        r.revenue = Money::parse(f[7]);
        r.utility = FineMoney::parse(f[8]);
      } else if (f[10] == "timeout") {
        r.status = CellStatus::timeout;
      } else {
        throw std::invalid_argument("status");
      }
      r.wall_ms = std::stod(f[9]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InstanceError("sweep CSV line " + std::to_string(line_no) + ": malformed field");
    }
  }
  return rows;
}

struct AverageRow {
  double variance = 0;
  std::optional<int> duration;
  Money cost;
  int cells = 0;
  int complete = 0;
  std::optional<Money> mean_revenue;  // over complete cells, rounded to Money
  std::optional<FineMoney> mean_utility;
};

inline std::vector<AverageRow> average_rows(const std::vector<SweepRow>& rows) {
  using Key = std::tuple<double, int, Money>;
  std::map<Key, AverageRow> groups;
  std::map<Key, std::pair<int128, int128>> sums;
  for (const auto& r : rows) {
    const Key key{r.variance, detail::duration_order(r.duration), r.cost};
    auto& g = groups[key];
    g.variance = r.variance;
    g.duration = r.duration;
    g.cost = r.cost;
    ++g.cells;
    if (r.status != CellStatus::ok) continue;
    ++g.complete;
    sums[key].first += r.revenue.raw();
    sums[key].second += r.utility.raw();
  }
  std::vector<AverageRow> out;
  for (auto& [key, g] : groups) {
    if (g.complete > 0) {
      const auto& [rev, util] = sums[key];
      g.mean_revenue = Money::from_raw(static_cast<std::int64_t>(detail::rounded_div<int128>(rev, g.complete)));
      g.mean_utility = FineMoney::from_raw(detail::rounded_div<int128>(util, g.complete));
    }
    out.push_back(g);
  }
  return out;
}

inline std::string averages_csv(const std::vector<AverageRow>& rows) {
  std::string out = "variance,model,d,c,cells,complete,mean_revenue,mean_utility\n";
  for (const auto& a : rows)
    out += detail::format_variance(a.variance) + "," + (a.duration ? "cliff" : "infinite") + "," +
           (a.duration ? std::to_string(*a.duration) : "inf") + "," + a.cost.to_string() + "," +
           std::to_string(a.cells) + "," + std::to_string(a.complete) + "," +
           (a.mean_revenue ? a.mean_revenue->to_string() : "") + "," + (a.mean_utility ? a.mean_utility->to_string() : "") +
           "\n";
  return out;
}

/// Per (variance, duration): how many seeds lose profit somewhere along the
/// ascending cost grid, and how many lose profit and total utility at the
/// same step. Also whether the variance-2 profit curve lies strictly above
/// the variance-5 one at every cost, per duration.
inline nlohmann::json sweep_summary(const std::vector<SweepRow>& rows) {
  using Series = std::tuple<double, int, std::uint64_t>;
  std::map<Series, std::vector<const SweepRow*>> by_seed;
  for (const auto& r : rows) by_seed[{r.variance, detail::duration_order(r.duration), r.seed}].push_back(&r);

  struct Counts {
    std::optional<int> duration;
    double variance = 0;
    int seeds = 0, profit_drops = 0, joint_drops = 0;
    std::vector<std::uint64_t> profit_seeds, joint_seeds;
  };
  std::map<std::pair<double, int>, Counts> counts;
  for (auto& [key, series] : by_seed) {
    std::sort(series.begin(), series.end(), [](auto* a, auto* b) { return a->cost < b->cost; });
    auto& c = counts[{std::get<0>(key), std::get<1>(key)}];
    c.duration = series.front()->duration;
    c.variance = std::get<0>(key);
    ++c.seeds;
    bool profit = false, joint = false;
    for (std::size_t i = 1; i < series.size(); ++i) {
      const auto *prev = series[i - 1], *cur = series[i];
      if (prev->status != CellStatus::ok || cur->status != CellStatus::ok) continue;
      if (cur->revenue < prev->revenue) {
        profit = true;
        if (cur->utility < prev->utility) joint = true;
      }
    }
    if (profit) {
      ++c.profit_drops;
      c.profit_seeds.push_back(std::get<2>(key));
    }
    if (joint) {
      ++c.joint_drops;
      c.joint_seeds.push_back(std::get<2>(key));
    }
  }
  nlohmann::json out;
  out["non_monotone"] = nlohmann::json::array();
  for (const auto& [key, c] : counts)
    out["non_monotone"].push_back({{"variance", c.variance},
                                   {"d", c.duration ? nlohmann::json(*c.duration) : nlohmann::json("inf")},
                                   {"seeds", c.seeds},
                                   {"profit_decreases", c.profit_drops},
                                   {"profit_and_utility_decrease", c.joint_drops},
                                   {"profit_seeds", c.profit_seeds},
                                   {"joint_seeds", c.joint_seeds}});

  const auto averages = average_rows(rows);
  std::map<int, std::map<Money, std::map<double, std::optional<Money>>>> curves;
  for (const auto& a : averages) curves[detail::duration_order(a.duration)][a.cost][a.variance] = a.mean_revenue;
  out["variance2_above_variance5"] = nlohmann::json::array();
  for (const auto& [order, by_cost] : curves) {
    bool present = false, above = true;
    for (const auto& [cost, by_var] : by_cost) {
      const auto low = by_var.find(2.0), high = by_var.find(5.0);
      if (low == by_var.end() || high == by_var.end() || !low->second || !high->second) continue;
      present = true;
      above = above && *low->second > *high->second;
    }
    if (!present) continue;
    out["variance2_above_variance5"].push_back(
        {{"d", order == std::numeric_limits<int>::max() ? nlohmann::json("inf") : nlohmann::json(order)}, {"above", above}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Figure data

enum class Figure { profit_vs_cost, utility_vs_cost, utility_vs_duration };

inline const char* to_string(Figure f) {
  switch (f) {
    case Figure::profit_vs_cost: return "profit_vs_cost";
    case Figure::utility_vs_cost: return "utility_vs_cost";
    case Figure::utility_vs_duration: return "utility_vs_duration";
  }
  return "";
}

inline std::optional<Figure> parse_figure(std::string_view name) {
  for (auto f : {Figure::profit_vs_cost, Figure::utility_vs_cost, Figure::utility_vs_duration})
    if (name == to_string(f)) return f;
  return std::nullopt;
}

struct FigurePoint {
  double x = 0;
  double y = 0;
  std::string x_label;
  std::string y_label;
  int seeds = 0;
};

struct FigureSeries {
  std::string name;
  std::vector<FigurePoint> points;
};

struct FigureData {
  Figure figure{};
  std::string x_axis, y_axis;
  std::vector<FigureSeries> series;
  std::vector<std::string> missing;
  std::string csv;
  std::string svg;
};

namespace detail {

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string render_svg(const FigureData& fig, const std::string& title) {
  constexpr double width = 720, height = 440, left = 70, right = 190, top = 40, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : fig.series)
    for (const auto& p : s.points) {
      x0 = std::min(x0, p.x), x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = (y1 - y0) * 0.05;
  y0 -= pad, y1 += pad;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * plot_h; };

  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fmt2(left + plot_w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + title + "</text>\n";
  out += "<rect x=\"" + fmt2(left) + "\" y=\"" + fmt2(top) + "\" width=\"" + fmt2(plot_w) + "\" height=\"" + fmt2(plot_h) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5, yv = y0 + (y1 - y0) * i / 5;
    out += "<line x1=\"" + fmt2(sx(xv)) + "\" y1=\"" + fmt2(top + plot_h) + "\" x2=\"" + fmt2(sx(xv)) + "\" y2=\"" +
           fmt2(top + plot_h + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt2(sx(xv)) + "\" y=\"" + fmt2(top + plot_h + 18) + "\" text-anchor=\"middle\">" + fmt2(xv) +
           "</text>\n";
    out += "<line x1=\"" + fmt2(left - 5) + "\" y1=\"" + fmt2(sy(yv)) + "\" x2=\"" + fmt2(left) + "\" y2=\"" +
           fmt2(sy(yv)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt2(left - 8) + "\" y=\"" + fmt2(sy(yv) + 4) + "\" text-anchor=\"end\">" + fmt2(yv) +
           "</text>\n";
  }
  out += "<text x=\"" + fmt2(left + plot_w / 2) + "\" y=\"" + fmt2(height - 15) + "\" text-anchor=\"middle\">" + fig.x_axis +
         "</text>\n";
  out += "<text transform=\"translate(18," + fmt2(top + plot_h / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         fig.y_axis + "</text>\n";
  for (std::size_t i = 0; i < fig.series.size(); ++i) {
    const auto& s = fig.series[i];
    const char* color = palette[i % std::size(palette)];
    std::string points;
    for (const auto& p : s.points) points += fmt2(sx(p.x)) + "," + fmt2(sy(p.y)) + " ";
    if (!points.empty()) points.pop_back();
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    for (const auto& p : s.points)
      out += "<circle cx=\"" + fmt2(sx(p.x)) + "\" cy=\"" + fmt2(sy(p.y)) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
    const double ly = top + 10 + 18 * static_cast<double>(i);
    out += "<line x1=\"" + fmt2(width - right + 15) + "\" y1=\"" + fmt2(ly) + "\" x2=\"" + fmt2(width - right + 40) +
           "\" y2=\"" + fmt2(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fmt2(width - right + 46) + "\" y=\"" + fmt2(ly + 4) + "\">" + s.name + "</text>\n";
  }
  if (!fig.missing.empty()) {
    std::string list;
    for (const auto& m : fig.missing) list += (list.empty() ? "" : "; ") + m;
    out += "<text x=\"" + fmt2(left) + "\" y=\"" + fmt2(height - 2) + "\" fill=\"#a00\" font-size=\"10\">missing: " + list +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace detail

/// Averaged series for one figure, as a long-format CSV plus an SVG line
/// chart. Cost figures have one series per (duration, variance) with the
/// unlimited model named "infinite"; the duration figure has one series per
/// (cost, variance) and places the unlimited model at x = T. Series with no
/// completed cell are listed under "# missing:" and left out of the chart.
inline FigureData emit_figure_data(const std::vector<SweepRow>& rows, Figure figure) {
  FigureData fig;
  fig.figure = figure;
  const bool by_duration = figure == Figure::utility_vs_duration;
  const bool utility = figure != Figure::profit_vs_cost;
  fig.x_axis = by_duration ? "shelf-life d" : "storage cost c";
  fig.y_axis = utility ? "mean buyer utility" : "mean profit";

  const auto averages = average_rows(rows);
  const int horizon = rows.empty() ? 0 : rows.front().days;
  std::map<std::tuple<int, std::string, double>, FigureSeries> series;  // ordered by (key, variance)
  for (const auto& a : averages) {
    std::string base;
    int order = 0;
    if (by_duration) {
      base = "c=" + a.cost.to_string();
      order = 0;
    } else {
      base = a.duration ? "d=" + std::to_string(*a.duration) : "infinite";
      order = detail::duration_order(a.duration);
    }
    auto& s = series[{order, by_duration ? a.cost.to_fixed_string() : std::string{}, a.variance}];
    s.name = base + ",var=" + detail::format_variance(a.variance);
    if (!a.mean_revenue) continue;
    FigurePoint p;
    p.seeds = a.complete;
    if (by_duration) {
      p.x = a.duration ? *a.duration : horizon;
      p.x_label = a.duration ? std::to_string(*a.duration) : "inf";
    } else {
      p.x = a.cost.to_double();
      p.x_label = a.cost.to_string();
    }
    p.y = utility ? a.mean_utility->to_double() : a.mean_revenue->to_double();
    p.y_label = utility ? a.mean_utility->to_string() : a.mean_revenue->to_string();
    s.points.push_back(std::move(p));
  }
  // A cost series needs the unlimited model for every variance present.
  if (!by_duration) {
    std::set<double> variances;
    for (const auto& a : averages) variances.insert(a.variance);
    for (double v : variances)
      if (!series.contains({std::numeric_limits<int>::max(), std::string{}, v}))
        fig.missing.push_back("infinite,var=" + detail::format_variance(v));
  }
  for (auto& [key, s] : series) {
    if (by_duration)
      std::stable_sort(s.points.begin(), s.points.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    if (s.points.empty()) fig.missing.push_back(s.name);
    else fig.series.push_back(std::move(s));
  }

  fig.csv = std::string("# figure: ") + to_string(figure) + "\n# missing:";
  for (const auto& m : fig.missing) fig.csv += " " + m;
  fig.csv += "\nseries,x,y,seeds\n";
  for (const auto& s : fig.series)
    for (const auto& p : s.points)
      fig.csv += "\"" + s.name + "\"," + p.x_label + "," + p.y_label + "," + std::to_string(p.seeds) + "\n";
  fig.svg = detail::render_svg(fig, to_string(figure));
  return fig;
}

// ---------------------------------------------------------------------------
// Config documents
//
//   { "N": 5, "T": 20, "base_mean": 30, "base_variance": 10,
//     "daily_variances": [2, 5], "costs": ["0", "0.5", "1"],
//     "durations": [2, 3, 4, "infinite"], "seeds": {"from": 1, "count": 50},
//     "stddev": false, "quantum": "0.001", "mode": "multi",
//     "timeout_seconds": 60 }

inline SweepConfig sweep_config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InstanceError("sweep config must be an object");
  SweepConfig config;
  auto number = [&](const char* key, double& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number()) throw InstanceError(std::string("sweep config: '") + key + "' must be a number");
    out = doc[key].get<double>();
  };
  if (doc.contains("N")) config.units = detail::int_field(doc, "N");
  if (doc.contains("T")) config.days = detail::int_field(doc, "T");
  number("base_mean", config.base_mean);
  number("base_variance", config.base_variance);
  if (doc.contains("daily_variances")) {
    config.daily_variances.clear();
    for (const auto& v : doc["daily_variances"]) {
      if (!v.is_number()) throw InstanceError("sweep config: variances must be numbers");
      config.daily_variances.push_back(v.get<double>());
    }
  }
  if (doc.contains("costs"))
    for (const auto& c : doc["costs"]) config.costs.push_back(detail::money_from_json(c, "costs"));
  if (doc.contains("durations")) {
    config.durations.clear();
    for (const auto& d : doc["durations"]) {
      if (d.is_string() && d.get<std::string>() == "infinite") config.durations.emplace_back(std::nullopt);
      else if (d.is_number_integer()) config.durations.emplace_back(d.get<int>());
      else throw InstanceError("sweep config: durations are integers or \"infinite\"");
    }
  }
  if (doc.contains("seeds")) {
    const auto& s = doc["seeds"];
    if (s.is_array()) {
      for (const auto& seed : s) {
        if (!seed.is_number_unsigned()) throw InstanceError("sweep config: seeds must be non-negative integers");
        config.seeds.push_back(seed.get<std::uint64_t>());
      }
    } else if (s.is_object() && s.contains("from") && s.contains("count")) {
      const auto from = s["from"].get<std::uint64_t>();
      const auto count = s["count"].get<std::uint64_t>();
      for (std::uint64_t i = 0; i < count; ++i) config.seeds.push_back(from + i);
    } else {
      throw InstanceError("sweep config: seeds must be a list or {from, count}");
    }
  }
  if (doc.contains("stddev")) config.stddev = doc["stddev"].get<bool>();
  if (doc.contains("quantum")) config.quantum = detail::money_from_json(doc["quantum"], "quantum");
  if (doc.contains("mode")) {
    const auto mode = doc["mode"].get<std::string>();
    if (mode == "single") config.mode = BuyerMode::single;
    else if (mode == "multi") config.mode = BuyerMode::multi;
    else throw InstanceError("sweep config: mode must be 'single' or 'multi'");
  }
  if (doc.contains("timeout_seconds")) {
    double t = 0;
    number("timeout_seconds", t);
    config.timeout_seconds = t;
  }
  return config;
}

inline SweepConfig load_sweep_config(std::string_view text) {
  try {
    return sweep_config_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(std::string("sweep config: ") + e.what());
  }
}

}  // namespace shelfprice
