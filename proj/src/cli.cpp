#include "bandplan/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bandplan/accurate_model.hpp"
#include "bandplan/config_optimizer.hpp"
#include "bandplan/monte_carlo.hpp"
#include "bandplan/queueing.hpp"
#include "bandplan/report_io.hpp"
#include "bandplan/scenario.hpp"

namespace fs = std::filesystem;

namespace bandplan::cli {

namespace {

struct Options {
  std::string scenario_path;
  std::string report_path;  // simulate only
  std::string out_dir = ".";
  std::string axis;  // sweep only
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool serial = false;
  long long frames = 0, trials = 0;
  int drops = 0;
  double relaxed_eps = -1;
};

struct Loaded {
  ScenarioConfig sc;
  std::string hash;
};

Loaded load_scenario(const Options& o) {
  const std::string text = read_file(o.scenario_path);
  Loaded l{parse_scenario_text(text, o.scenario_path), hash_hex(fnv1a64(text))};
  if (o.seed_set) l.sc.seed = o.seed;
  if (o.frames > 0) l.sc.frames = o.frames;
  if (o.trials > 0) l.sc.trials = o.trials;
  if (o.drops > 0) l.sc.drops = o.drops;
  if (o.relaxed_eps >= 0) l.sc.relaxed_eps = o.relaxed_eps;
  return l;
}

std::string out_path(const Options& o, const std::string& name) {
  return (fs::path(o.out_dir) / name).string();
}

std::string mhz(double hz) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", hz / 1e6);
  return std::string(buf) + " MHz";
}

void write_summary_csv(const std::string& path, const ScenarioConfig& sc, const ConfigReport& rep,
                       const std::string& hash) {
  std::string t =
      "scenario_hash,feasible,sensors,antennas,d_u_frames,d_d_frames,d_q_frames,"
      "eps_u,eps_d,eps_q,eb_plus,m_a_th,ul_units,ul_bound_hz,dl_bound_hz,total_hz\n";
  t += csv_row({hash, rep.feasible ? "1" : "0", std::to_string(sc.sensors),
                std::to_string(sc.nt), std::to_string(rep.delay.d_u),
                std::to_string(rep.delay.d_d), std::to_string(rep.delay.d_q),
                format_double(rep.eps.eps_u), format_double(rep.eps.eps_d),
                format_double(rep.eps.eps_q), std::to_string(rep.eb_plus),
                std::to_string(rep.m_a_th), std::to_string(rep.ul_units),
                format_double(rep.ul_bound_hz), format_double(rep.dl_bound_hz),
                format_double(rep.total_hz)}) +
       "\n";
  write_file(path, t);
}

int cmd_optimize(const Options& o) {
  Loaded l = load_scenario(o);
  const ScenarioConfig& sc = l.sc;
  const Exec exec = o.serial ? Exec::serial : Exec::parallel;
  const auto alphas = sensor_alphas(sc);
  const auto distances = sensor_distances(sc);

  ConfigReport rep;
  if (sc.split == ScenarioConfig::Split::grid) {
    rep = optimize_delays(sc, alphas, equal_split(sc.eps_max), exec);
    if (rep.feasible) {
      auto search = optimize_epsilon_split(sc, alphas, rep.delay, sc.eps_grid_step, exec);
      rep = search.report;
    }
  } else {
    EpsilonSplit eps = sc.split == ScenarioConfig::Split::fixed
                           ? EpsilonSplit{sc.eps_u, sc.eps_d, sc.eps_q}
                           : equal_split(sc.eps_max);
    rep = optimize_delays(sc, alphas, eps, exec);
  }

  fs::create_directories(o.out_dir);
  write_report(o.out_dir, sc, rep, l.hash);
  std::vector<std::string> outputs{"report.txt"};
  if (!rep.ul_plans.empty()) {
    write_plans_csv(out_path(o, "plans.csv"), distances, alphas, rep.ul_plans);
    outputs.push_back("plans.csv");
  }
  write_summary_csv(out_path(o, "summary.csv"), sc, rep, l.hash);
  outputs.push_back("summary.csv");
  write_manifest(out_path(o, "optimize_manifest.txt"), "optimize", o.scenario_path, l.hash,
                 outputs);

  if (!rep.feasible) {
    std::cerr << "infeasible: " << rep.infeasible_reason << "\n";
    return 3;
  }
  std::cout << "delays " << rep.delay.d_u << "+" << rep.delay.d_d << "+" << rep.delay.d_q
            << " frames, bound " << mhz(rep.total_hz) << " (uplink " << mhz(rep.ul_bound_hz)
            << ", downlink " << mhz(rep.dl_bound_hz) << ")\n";
  return 0;
}

struct SimRow {
  std::string check;
  std::string target, estimate, ci_low, ci_high, events, total, pass;
};

SimRow rate_row(const std::string& check, double target, const RateEstimate& r) {
  return {check,
          format_double(target),
          format_double(r.rate),
          format_double(r.ci_low),
          format_double(r.ci_high),
          std::to_string(r.events),
          std::to_string(r.total),
          r.ci_low <= target ? "1" : "0"};
}

int cmd_simulate(const Options& o) {
  Loaded l = load_scenario(o);
  const ScenarioConfig& sc = l.sc;
  const Exec exec = o.serial ? Exec::serial : Exec::parallel;
  LoadedReport loaded = read_report(o.report_path);
  if (loaded.scenario_hash != l.hash) {
    std::cerr << "scenario hash mismatch: report has " << loaded.scenario_hash
              << ", scenario file hashes to " << l.hash << "\n";
    return 4;
  }
  const ConfigReport& rep = loaded.rep;
  if (!rep.feasible) {
    std::cerr << "report is infeasible; nothing to validate\n";
    return 3;
  }

  SimConfig sim{sc.seed, sc.frames, sc.trials, sc.drops, exec};
  const SolverConfig scfg = solver_config(sc);
  const bool relaxed = sc.relaxed_eps > 0;
  const EpsilonSplit tgt = relaxed ? equal_split(sc.relaxed_eps) : rep.eps;
  const auto alphas = sensor_alphas(sc);

  std::vector<SimRow> rows;

  // queue leg: the sensors one BS carries, served at the provisioned rate
  int shared = 0;
  for (int m = 0; m < sc.sensors; ++m)
    if (m % sc.bs_count == 0) ++shared;
  std::vector<double> probs(shared, sc.packet_prob());
  int service = rep.eb_plus;
  if (relaxed)
    service = service_rate_ceiling(
        effective_bandwidth(shared * sc.packet_prob(), rep.delay.d_q, tgt.eps_q));
  auto arrivals = bernoulli_arrival_counts(sc.seed, stream::queue_gap, probs, sim.frames);
  rows.push_back(rate_row("queue_delay", tgt.eps_q, simulate_queue(arrivals, service,
                                                                   rep.delay.d_q)));

  // uplink leg: the worst-placed sensor
  if (!rep.ul_plans.empty()) {
    std::size_t worst = std::min_element(alphas.begin(), alphas.end()) - alphas.begin();
    LinkParams lp = ul_link(sc, alphas[worst]);
    LinkContext ctx = LinkContext::uplink(rep.delay.d_u * sc.t_f_s);
    LinkPlan plan = rep.ul_plans[worst];
    if (relaxed)
      if (auto p = solve_link(lp, ctx, tgt.eps_u, scfg)) plan = *p;
    rows.push_back(rate_row("ul_loss", tgt.eps_u, simulate_link_loss(lp, ctx, plan, sim)));
  }

  // downlink leg at the cell edge
  if (rep.dl_plan) {
    LinkParams lp = dl_link(sc);
    int eb = rep.eb_plus;
    if (relaxed)
      eb = service_rate_ceiling(effective_bandwidth(sc.lambda_queue(), rep.delay.d_q, tgt.eps_q));
    LinkContext ctx = LinkContext::downlink(rep.delay.d_d * sc.t_f_s, eb);
    LinkPlan plan = *rep.dl_plan;
    if (relaxed)
      if (auto p = solve_link(lp, ctx, tgt.eps_d, scfg)) plan = *p;
    rows.push_back(rate_row("dl_loss", tgt.eps_d, simulate_link_loss(lp, ctx, plan, sim)));
  }

  // occupancy trace against the provisioned bound
  TraceStats tr = simulate_bandwidth_trace(sc, rep, sim);
  rows.push_back({"trace_max_hz", format_double(tr.bound_hz), format_double(tr.max_hz), "", "",
                  std::to_string(tr.frames_above_bound), std::to_string(tr.frames),
                  tr.max_hz <= tr.bound_hz ? "1" : "0"});
  rows.push_back({"trace_mean_hz", format_double(tr.bound_hz), format_double(tr.mean_hz), "", "",
                  "", std::to_string(tr.frames), tr.mean_hz <= tr.bound_hz ? "1" : "0"});

  // service availability over placement and shadowing redraws
  AvailabilityResult av = simulate_availability(sc, rep.delay.d_u, rep.eps.eps_u, sim);
  rows.push_back({"availability", "", format_double(av.availability.rate),
                  format_double(av.availability.ci_low), format_double(av.availability.ci_high),
                  std::to_string(av.availability.events), std::to_string(av.availability.total),
                  ""});

  fs::create_directories(o.out_dir);
  std::string t = "check,target,estimate,ci_low,ci_high,events,total,pass\n";
  int failing = 0;
  for (const auto& r : rows) {
    t += csv_row({r.check, r.target, r.estimate, r.ci_low, r.ci_high, r.events, r.total, r.pass}) +
         "\n";
    if (r.pass == "0") ++failing;
  }
  write_file(out_path(o, "sim_report.csv"), t);
  write_manifest(out_path(o, "simulate_manifest.txt"), "simulate", o.scenario_path, l.hash,
                 {"sim_report.csv"});

  for (const auto& r : rows) {
    std::string verdict = r.pass.empty() ? "" : (r.pass == "1" ? "  ok" : "  VIOLATED");
    std::cout << r.check << ": " << r.estimate << verdict << "\n";
  }
  if (failing) std::cerr << failing << " check(s) exceeded their target\n";
  return 0;
}

// The delay split the sweeps hold fixed: the optimizer's pick when the
// scenario is feasible, otherwise the longest uplink the budget allows.
int sweep_d_u(const ScenarioConfig& sc, const std::vector<double>& alphas, Exec exec) {
  ConfigReport rep = optimize_delays(sc, alphas, equal_split(sc.eps_max), exec);
  if (rep.feasible) return rep.delay.d_u;
  return std::max(3, sc.budget_frames() - 2);
}

int cmd_sweep(const Options& o) {
  Loaded l = load_scenario(o);
  const ScenarioConfig& sc = l.sc;
  const Exec exec = o.serial ? Exec::serial : Exec::parallel;
  const auto alphas = sensor_alphas(sc);
  const std::string file = "sweep_" + o.axis + ".csv";
  std::string t;

  if (o.axis == "delay") {
    t = "d_u_frames,d_d_frames,d_q_frames,feasible,ul_hz,dl_hz,total_hz\n";
    for (const auto& r : bandwidth_vs_delay_curve(sc, alphas, equal_split(sc.eps_max), exec))
      t += csv_row({std::to_string(r.delay.d_u), std::to_string(r.delay.d_d),
                    std::to_string(r.delay.d_q), r.feasible ? "1" : "0", format_double(r.ul_hz),
                    format_double(r.dl_hz), format_double(r.total_hz)}) +
           "\n";
  } else if (o.axis == "epsilon") {
    ConfigReport base = optimize_delays(sc, alphas, equal_split(sc.eps_max), exec);
    if (!base.feasible) {
      std::cerr << "infeasible at equal split: " << base.infeasible_reason << "\n";
      return 3;
    }
    t = "share_u,eps_u,eps_d,eps_q,feasible,ul_hz,dl_hz,total_hz\n";
    long long k = std::llround(1.0 / sc.eps_grid_step);
    for (long long i = 1; i + 2 <= k; ++i) {
      double eps_u = sc.eps_max * static_cast<double>(i) / static_cast<double>(k);
      double rest = (sc.eps_max - eps_u) / 2;
      ConfigReport rep =
          total_bandwidth_bound(sc, alphas, base.delay, {eps_u, rest, rest}, exec);
      t += csv_row({format_double(static_cast<double>(i) / static_cast<double>(k)),
                    format_double(eps_u), format_double(rest), format_double(rest),
                    rep.feasible ? "1" : "0", format_double(rep.ul_bound_hz),
                    format_double(rep.dl_bound_hz), format_double(rep.total_hz)}) +
           "\n";
    }
  } else if (o.axis == "antennas") {
    t = "antennas,feasible,d_u_frames,d_d_frames,d_q_frames,eb_plus,m_a_th,ul_hz,dl_hz,total_hz\n";
    for (int nt : sc.sweep_antennas) {
      ScenarioConfig s2 = sc;
      s2.nt = nt;
      ConfigReport rep = optimize_delays(s2, alphas, equal_split(s2.eps_max), exec);
      t += csv_row({std::to_string(nt), rep.feasible ? "1" : "0", std::to_string(rep.delay.d_u),
                    std::to_string(rep.delay.d_d), std::to_string(rep.delay.d_q),
                    std::to_string(rep.eb_plus), std::to_string(rep.m_a_th),
                    format_double(rep.ul_bound_hz), format_double(rep.dl_bound_hz),
                    format_double(rep.total_hz)}) +
           "\n";
    }
  } else if (o.axis == "distance") {
    int d_u = sweep_d_u(sc, alphas, exec);
    t = "antennas,distance_m,bound_feasible,exact_feasible,bound_b_hz,exact_b_hz,gap_hz\n";
    for (const auto& r :
         bound_vs_exact_grid(sc, sc.sweep_antennas, sc.sweep_distances, d_u, sc.eps_max / 3))
      t += csv_row({std::to_string(r.nt), format_double(r.distance_m),
                    r.bound_feasible ? "1" : "0", r.exact_feasible ? "1" : "0",
                    format_double(r.bound_b_hz), format_double(r.exact_b_hz),
                    format_double(r.gap_hz)}) +
           "\n";
  } else if (o.axis == "csit") {
    int d_u = sweep_d_u(sc, alphas, exec);
    const SolverConfig scfg = solver_config(sc);
    double alpha_edge = path_gain_linear(sc.cell_radius_m);
    t = "antennas,no_csit_feasible,no_csit_hz,one_bit_feasible,one_bit_reserved_hz,one_bit_n,"
        "one_bit_b_hz\n";
    for (int nt : sc.sweep_antennas) {
      ScenarioConfig s2 = sc;
      s2.nt = nt;
      LinkParams lp = ul_link(s2, alpha_edge);
      LinkContext ctx = LinkContext::uplink(d_u * sc.t_f_s);
      auto plain = solve_link(lp, ctx, sc.eps_max / 3, scfg);
      auto one_bit = one_bit_csit_plan(lp, d_u * sc.t_f_s, sc.eps_max / 3, scfg);
      t += csv_row({std::to_string(nt), plain ? "1" : "0",
                    format_double(plain ? plain->total_hz() : 0.0), one_bit ? "1" : "0",
                    format_double(one_bit ? one_bit->reserved_hz : 0.0),
                    std::to_string(one_bit ? one_bit->n : 0),
                    format_double(one_bit ? one_bit->b_hz : 0.0)}) +
           "\n";
    }
  } else {
    std::cerr << "unknown sweep axis: " << o.axis << "\n";
    return 2;
  }

  fs::create_directories(o.out_dir);
  write_file(out_path(o, file), t);
  write_manifest(out_path(o, "sweep_manifest.txt"), "sweep " + o.axis, o.scenario_path, l.hash,
                 {file});
  std::cout << "wrote " << file << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  Options o;
  CLI::App app{"joint uplink/downlink bandwidth planner for short-deadline traffic"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", o.scenario_path, "scenario file")->required();
    cmd->add_option("--out-dir", o.out_dir, "directory for output artifacts");
    cmd->add_option("--seed", o.seed, "override the scenario seed");
    cmd->add_flag("--serial", o.serial, "run single-threaded");
  };

  CLI::App* opt = app.add_subcommand("optimize", "plan delays, error budget, and bandwidth");
  add_common(opt);

  CLI::App* sim = app.add_subcommand("simulate", "validate an optimized plan by simulation");
  add_common(sim);
  sim->add_option("report", o.report_path, "report.txt produced by optimize")->required();
  sim->add_option("--frames", o.frames, "queue and trace length in frames");
  sim->add_option("--trials", o.trials, "link-loss decode trials");
  sim->add_option("--drops", o.drops, "availability placement redraws");
  sim->add_option("--relaxed-eps", o.relaxed_eps,
                  "re-plan at this looser total error target so rates are measurable");

  CLI::App* swp = app.add_subcommand("sweep", "tabulate the bound along one axis");
  add_common(swp);
  swp->add_option("--axis", o.axis, "delay, epsilon, antennas, distance, or csit")
      ->required()
      ->check(CLI::IsMember({"delay", "epsilon", "antennas", "distance", "csit"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  o.seed_set = opt->count("--seed") + sim->count("--seed") + swp->count("--seed") > 0;

  try {
    if (opt->parsed()) return cmd_optimize(o);
    if (sim->parsed()) return cmd_simulate(o);
    return cmd_sweep(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("bandplan");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace bandplan::cli
