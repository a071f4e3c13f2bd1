// Command line front end: load a channel (file or preset), run divergence /
// mean / information / capacity / gaussian computations, emit text or CSV.
//
// Exit codes: 0 ok, 2 schema or parameter violation, 3 infinite divergence
// under --finite-required, 4 non-convergence without --allow-unconverged,
// 5 infeasible cost constraint, 6 cost constraint on the feasibility
// boundary.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "augustin/capacity.hpp"
#include "augustin/channel_io.hpp"
#include "augustin/core.hpp"
#include "augustin/divergence.hpp"
#include "augustin/gaussian.hpp"
#include "augustin/mean.hpp"
#include "augustin/shift_examples.hpp"

using namespace augustin;
using nlohmann::json;

namespace {

constexpr int kExitSchema = 2;
constexpr int kExitInfinite = 3;
constexpr int kExitUnconverged = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitBoundary = 6;

struct Display {
  bool bits = false;
  double scale(double nats) const { return bits ? nats / std::log(2.0) : nats; }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Order parse_order(double alpha) {
  return alpha == 1.0 ? Order::one() : Order::of(alpha);
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw SchemaError("empty number list: " + s);
  return out;
}

// "a:b:n" inclusive range or a comma list.
std::vector<double> parse_grid(const std::string& s) {
  if (s.find(':') == std::string::npos) return parse_number_list(s);
  std::stringstream ss(s);
  std::string a, b, n;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, n, ':');
  double lo = std::stod(a), hi = std::stod(b);
  int count = std::stoi(n);
  if (count < 2) throw SchemaError("grid needs at least 2 points");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

// Input distribution: "uniform", "random" (with seed), a comma list, or a
// JSON file containing an array.
Prob parse_dist(const std::string& spec, std::size_t n, std::uint64_t seed) {
  if (spec == "uniform") return uniform_prob(n);
  if (spec == "random") {
    std::vector<double> v(n);
    std::uint64_t state = seed ? seed : 1;
    double s = 0.0;
    for (auto& x : v) {
      // splitmix64 into (0,1]
      state += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z = z ^ (z >> 31);
      x = (static_cast<double>(z >> 11) + 1.0) / 9007199254740993.0;
      s += x;
    }
    for (auto& x : v) x /= s;
    return Prob(std::move(v));
  }
  if (spec.find(',') != std::string::npos) {
    auto v = parse_number_list(spec);
    if (v.size() != n) throw SchemaError("distribution length mismatch");
    return Prob(std::move(v));
  }
  std::ifstream in(spec);
  if (!in) throw SchemaError("cannot open distribution file: " + spec);
  json j;
  in >> j;
  auto v = j.get<std::vector<double>>();
  if (v.size() != n) throw SchemaError("distribution length mismatch");
  return Prob(std::move(v));
}

void write_table(const std::vector<SweepRow>& rows, const std::string& out,
                 const Display& disp) {
  std::ostringstream csv;
  csv << "parameter,value,lambda_star,converged\n";
  for (const auto& r : rows)
    csv << fmt(r.parameter) << ',' << fmt(disp.scale(r.value)) << ','
        << fmt(r.lambda_star) << ',' << (r.converged ? 1 : 0) << '\n';
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream f(out);
    f << csv.str();
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Renyi-divergence information measures for finite channels"};
  app.require_subcommand(1);
  Display disp;
  app.add_flag("--bits", disp.bits, "display values in bits instead of nats");

  // ---- divergence ----
  auto* cmd_div = app.add_subcommand("divergence",
                                     "Renyi divergence of a channel row");
  std::string div_channel, div_q = "uniform";
  double div_alpha = 1.0;
  std::size_t div_row = 0;
  bool div_tilted = false, div_finite_required = false;
  cmd_div->add_option("channel", div_channel, "channel file or preset")
      ->required();
  cmd_div->add_option("--alpha", div_alpha, "order")->required();
  cmd_div->add_option("--row", div_row, "input row index");
  cmd_div->add_option("--q", div_q,
                      "reference: uniform, mean:<P>, comma list, or file");
  cmd_div->add_flag("--tilted", div_tilted, "also print the tilted measure");
  cmd_div->add_flag("--finite-required", div_finite_required,
                    "exit 3 when the divergence is infinite");

  // ---- mean / info ----
  auto* cmd_mean = app.add_subcommand("mean",
                                      "Augustin mean and information");
  std::string mean_channel, mean_p = "uniform", mean_dump;
  double mean_alpha = 1.0, mean_tol = 1e-12;
  std::int64_t mean_max_iter = 10000;
  std::uint64_t mean_seed = 0;
  bool mean_allow_unconverged = false;
  cmd_mean->add_option("channel", mean_channel, "channel file or preset")
      ->required();
  cmd_mean->add_option("--alpha", mean_alpha, "order")->required();
  cmd_mean->add_option("--p", mean_p, "input distribution");
  cmd_mean->add_option("--tol", mean_tol, "TV tolerance");
  cmd_mean->add_option("--max-iter", mean_max_iter, "iteration cap");
  cmd_mean->add_option("--seed", mean_seed, "seed for --p random");
  cmd_mean->add_option("--dump-mean", mean_dump, "write the mean as JSON");
  cmd_mean->add_flag("--allow-unconverged", mean_allow_unconverged,
                     "report best iterate instead of exit 4");
  auto* cmd_info = app.add_subcommand("info", "alias of mean");
  cmd_info->add_option("channel", mean_channel, "")->required();
  cmd_info->add_option("--alpha", mean_alpha, "")->required();
  cmd_info->add_option("--p", mean_p, "");
  cmd_info->add_option("--tol", mean_tol, "");
  cmd_info->add_option("--max-iter", mean_max_iter, "");
  cmd_info->add_option("--seed", mean_seed, "");
  cmd_info->add_option("--dump-mean", mean_dump, "");
  cmd_info->add_flag("--allow-unconverged", mean_allow_unconverged, "");

  // ---- capacity ----
  auto* cmd_cap = app.add_subcommand("capacity",
                                     "capacities and capacity sweeps");
  std::string cap_channel, cap_lambda, cap_rho, cap_sweep, cap_grid, cap_out;
  double cap_alpha = 1.0, cap_tol = 1e-9;
  cmd_cap->add_option("channel", cap_channel, "channel file or preset")
      ->required();
  cmd_cap->add_option("--alpha", cap_alpha, "order")->required();
  cmd_cap->add_option("--lambda", cap_lambda, "Lagrange multiplier list");
  cmd_cap->add_option("--rho", cap_rho, "cost constraint list");
  cmd_cap->add_option("--sweep", cap_sweep, "order | cost | lambda");
  cmd_cap->add_option("--grid", cap_grid, "sweep grid: list or a:b:n");
  cmd_cap->add_option("--out", cap_out, "CSV output path (default stdout)");
  cmd_cap->add_option("--tol", cap_tol, "bracket tolerance");

  // ---- gaussian ----
  auto* cmd_gauss = app.add_subcommand("gaussian",
                                       "scalar/parallel Gaussian closed forms");
  double g_alpha = 1.0, g_sigma2 = 1.0;
  std::string g_parallel, g_discretize;
  std::optional<double> g_rho, g_lambda;
  cmd_gauss->add_option("--alpha", g_alpha, "order")->required();
  cmd_gauss->add_option("--sigma2", g_sigma2, "noise variance");
  cmd_gauss->add_option("--rho", g_rho, "power constraint");
  cmd_gauss->add_option("--lambda", g_lambda, "Lagrange multiplier");
  cmd_gauss->add_option("--parallel", g_parallel,
                        "comma list of noise variances");
  cmd_gauss->add_option("--discretize", g_discretize,
                        "cells,range: numerical cross-check");

  CLI11_PARSE(app, argc, argv);

  if (cmd_div->parsed()) {
    ChannelDocument doc = load_channel_document(div_channel);
    Order order = parse_order(div_alpha);
    const Channel& w = doc.channel;
    if (div_row >= w.num_inputs()) throw SchemaError("row index out of range");
    Prob row = w.row_prob(div_row);
    Prob q = uniform_prob(w.num_outputs());
    if (div_q.rfind("mean:", 0) == 0) {
      Prob p = parse_dist(div_q.substr(5), w.num_inputs(), 0);
      q = solve_augustin_mean(order, p, w).mean;
    } else {
      q = parse_dist(div_q, w.num_outputs(), 0);
    }
    DivergenceValue d = renyi_divergence(order, row, q);
    if (!d.finite()) {
      std::cout << "divergence inf\n";
      if (div_finite_required) return kExitInfinite;
      return 0;
    }
    std::cout << "divergence " << fmt(disp.scale(d.nats)) << "\n";
    if (div_tilted) {
      Prob t = tilted_measure(order, row, q);
      std::cout << "tilted";
      for (std::size_t y = 0; y < t.size(); ++y) std::cout << ' ' << fmt(t[y]);
      std::cout << "\n";
    }
    return 0;
  }

  if (cmd_mean->parsed() || cmd_info->parsed()) {
    ChannelDocument doc = load_channel_document(mean_channel);
    Order order = parse_order(mean_alpha);
    const Channel& w = doc.channel;
    Prob p = parse_dist(mean_p, w.num_inputs(), mean_seed);
    AugustinSolverOptions opt{mean_tol, mean_max_iter};
    AugustinSolution sol = solve_augustin_mean(order, p, w, opt);
    std::cout << "info " << fmt(disp.scale(sol.info)) << "\n";
    std::cout << "iterations " << sol.iterations << "\n";
    std::cout << "residual " << fmt(sol.residual) << "\n";
    std::cout << "fixed_point_residual " << fmt(sol.fixed_point_residual)
              << "\n";
    std::cout << "converged " << (sol.converged ? 1 : 0) << "\n";
    if (!mean_dump.empty()) {
      json j = json::object();
      j["alpha"] = mean_alpha;
      j["mean"] = sol.mean.weights();
      j["info_nats"] = sol.info;
      std::ofstream f(mean_dump);
      f << j.dump(2) << "\n";
    }
    if (!sol.converged && !mean_allow_unconverged) return kExitUnconverged;
    return 0;
  }

  if (cmd_cap->parsed()) {
    ChannelDocument doc = load_channel_document(cap_channel);
    Order order = parse_order(cap_alpha);
    const Channel& w = doc.channel;
    CapacitySolverOptions opt;
    opt.tol = cap_tol;
    const AnalyticDualCurve* analytic =
        doc.analytic ? &*doc.analytic : nullptr;

    if (!cap_sweep.empty()) {
      if (cap_grid.empty()) throw SchemaError("--sweep requires --grid");
      auto grid = parse_grid(cap_grid);
      std::vector<SweepRow> rows;
      if (cap_sweep == "order") {
        std::vector<double> lambda;
        if (!cap_lambda.empty()) lambda = parse_number_list(cap_lambda);
        rows = capacity_order_curve(w, grid, lambda,
                                    doc.cost ? &*doc.cost : nullptr, opt);
      } else if (cap_sweep == "cost") {
        if (!doc.cost) throw SchemaError("cost sweep needs a channel cost");
        rows = capacity_cost_curve(order, w, *doc.cost, grid, opt, analytic);
      } else if (cap_sweep == "lambda") {
        if (!doc.cost) throw SchemaError("lambda sweep needs a channel cost");
        std::sort(grid.begin(), grid.end());
        std::optional<Prob> prev;
        for (double l : grid) {
          SweepRow r;
          r.parameter = l;
          if (analytic) {
            r.value = (l < analytic->lambda_min_finite - 1e-15)
                          ? std::numeric_limits<double>::infinity()
                          : analytic->plateau;
            r.converged = true;
            if (prev) r.center_tv_to_previous = 0.0;
            prev = analytic->center;
          } else {
            std::vector<double> lam(doc.cost->dim(), l);
            CapacityResult cr = al_capacity(order, w, lam, *doc.cost, opt);
            r.value = cr.value;
            r.converged = cr.diagnostics.converged;
            if (prev && cr.center)
              r.center_tv_to_previous = total_variation(*cr.center, *prev);
            prev = cr.center;
          }
          rows.push_back(r);
        }
      } else {
        throw SchemaError("unknown sweep kind: " + cap_sweep);
      }
      write_table(rows, cap_out, disp);
      return 0;
    }

    if (!cap_rho.empty()) {
      if (!doc.cost) throw SchemaError("a cost constraint needs channel costs");
      auto rho = parse_number_list(cap_rho);
      CapacityResult res;
      try {
        res = cost_constrained_capacity(order, w, *doc.cost, rho, opt,
                                        analytic);
      } catch (const std::domain_error& e) {
        std::string msg = e.what();
        std::cerr << msg << "\n";
        return msg.find("boundary") != std::string::npos ? kExitBoundary
                                                         : kExitInfeasible;
      }
      std::cout << "value " << fmt(disp.scale(res.value)) << "\n";
      std::cout << "lambda_star";
      for (double l : res.dual_multiplier) std::cout << ' ' << fmt(l);
      std::cout << "\nconverged " << (res.diagnostics.converged ? 1 : 0)
                << "\n";
      return res.diagnostics.converged ? 0 : kExitUnconverged;
    }

    std::vector<double> lambda;
    if (!cap_lambda.empty()) lambda = parse_number_list(cap_lambda);
    CapacityResult res;
    if (analytic && !lambda.empty()) {
      double lmax = *std::max_element(lambda.begin(), lambda.end());
      res.value = (lmax < analytic->lambda_min_finite - 1e-15)
                      ? std::numeric_limits<double>::infinity()
                      : analytic->plateau;
      res.center = analytic->center;
      res.diagnostics.converged = true;
    } else {
      res = rg_capacity(order, w, lambda,
                        doc.cost ? &*doc.cost : nullptr, opt);
    }
    std::cout << "value " << fmt(disp.scale(res.value)) << "\n";
    std::cout << "converged " << (res.diagnostics.converged ? 1 : 0) << "\n";
    std::cout << "bracket " << fmt(res.diagnostics.inner_residual) << "\n";
    return res.diagnostics.converged ? 0 : kExitUnconverged;
  }

  if (cmd_gauss->parsed()) {
    Order order = parse_order(g_alpha);
    if (!g_parallel.empty()) {
      if (!g_rho) throw SchemaError("--parallel needs --rho");
      auto sigma2s = parse_number_list(g_parallel);
      WaterfillResult res = parallel_waterfill(order, sigma2s, *g_rho);
      std::cout << "capacity " << fmt(disp.scale(res.capacity)) << "\n";
      std::cout << "lambda_star " << fmt(res.lambda_star) << "\n";
      std::cout << "allocations";
      for (double r : res.allocations) std::cout << ' ' << fmt(r);
      std::cout << "\ntheta";
      for (double t : res.center_variances) std::cout << ' ' << fmt(t);
      std::cout << "\n";
      return 0;
    }
    if (g_rho) {
      double cap = scalar_capacity(order, g_sigma2, *g_rho);
      double theta = scalar_center_variance(order, g_sigma2, *g_rho);
      std::cout << "capacity " << fmt(disp.scale(cap)) << "\n";
      std::cout << "theta " << fmt(theta) << "\n";
      std::cout << "dC_drho "
                << fmt(scalar_capacity_derivative(order, g_sigma2, *g_rho))
                << "\n";
      if (!g_discretize.empty()) {
        auto parts = parse_number_list(g_discretize);
        if (parts.size() != 2)
          throw SchemaError("--discretize needs cells,range");
        int cells = static_cast<int>(parts[0]);
        double range = parts[1];
        int npoints = 41;
        std::vector<double> points;
        double half = range / 2.0;
        for (int i = 0; i < npoints; ++i)
          points.push_back(-half + 2.0 * half * i / (npoints - 1));
        auto [ch, cost] = discretize_scalar_gaussian(
            g_sigma2, points, -range, range, static_cast<std::size_t>(cells));
        // Quantized N(0, rho) input on the grid.
        std::vector<double> pw(points.size());
        double width = points.size() > 1 ? points[1] - points[0] : 1.0;
        double s = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          double z = points[i];
          pw[i] = std::exp(-z * z / (2.0 * *g_rho)) * width;
          s += pw[i];
        }
        for (auto& v : pw) v /= s;
        double numeric = augustin_information(order, Prob(pw), ch);
        double analytic_crd = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i)
          analytic_crd += pw[i] * gaussian_divergence(order, points[i],
                                                      g_sigma2, theta);
        std::cout << "numeric_info " << fmt(disp.scale(numeric)) << "\n";
        std::cout << "analytic_crd " << fmt(disp.scale(analytic_crd)) << "\n";
        std::cout << "gap " << fmt(std::fabs(numeric - analytic_crd)) << "\n";
      }
      return 0;
    }
    if (g_lambda) {
      std::cout << "al_capacity "
                << fmt(disp.scale(scalar_al_capacity(order, g_sigma2,
                                                     *g_lambda)))
                << "\n";
      std::cout << "theta_lambda "
                << fmt(scalar_al_center_variance(order, g_sigma2, *g_lambda))
                << "\n";
      std::cout << "dC_dlambda "
                << fmt(al_capacity_derivative(order, g_sigma2, *g_lambda))
                << "\n";
      return 0;
    }
    throw SchemaError("gaussian needs --rho, --lambda, or --parallel");
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
