#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "fbl_channel.hpp"
#include "solver.hpp"
#include "units.hpp"

namespace bandplan {

// Everything needed to reproduce one planning run. Defaults describe the
// reference deployment: three base stations sharing spectrum with reuse 1/3,
// 3000 sensors per cell area, urban-micro path loss, 100 packets/s/sensor.
struct ScenarioConfig {
  // system
  int bs_count = 3;
  int nt = 8;
  double cell_radius_m = 250.0;
  double min_distance_m = 50.0;
  double reuse_factor = 1.0 / 3.0;  // fraction of spectrum available per cell
  double w_c_hz = 0.5e6;
  double b0_hz = 12.5e3;
  double t_f_s = 1e-4;

  // devices
  int sensors = 3000;
  double packet_rate_hz = 100.0;  // per sensor
  double packet_bits = 160.0;
  double sensor_power_w = dbm_to_watt(23.0);

  // bs
  double bs_power_w = dbm_to_watt(46.0);
  double noise_density_w_hz = dbm_to_watt(-174.0);
  double phi = 1.0;

  // qos
  double d_max_s = 1.1e-3;
  double d_backhaul_s = 0.1e-3;
  double eps_max = 1e-7;
  double eps_m = 1e-15;          // active-count overflow probability
  double dl_queue_share = 0.0;   // fraction of arrivals one BS queue carries; 0 -> 1/bs_count
  enum class Split { equal, grid, fixed };
  Split split = Split::equal;
  double eps_u = 0, eps_d = 0, eps_q = 0;  // used when split == fixed
  double eps_grid_step = 0.05;             // used when split == grid

  // solver
  int n_max = 10;
  double delta_b_hz = 0;

  // sim
  std::uint64_t seed = 1;
  long long frames = 1000000;
  long long trials = 200000;
  int drops = 10000;
  double shadowing_sigma_db = 8.0;
  double relaxed_eps = 0.0;  // 0 means validate at the planned targets

  // sweep grids
  std::vector<int> sweep_antennas{8, 16, 32};
  std::vector<double> sweep_distances{50, 75, 100, 125, 150, 175, 200, 225, 250};

  int budget_frames() const {
    return static_cast<int>((d_max_s - d_backhaul_s) / t_f_s + 1e-9);
  }
  double lambda_total() const { return sensors * packet_rate_hz * t_f_s; }
  double queue_share() const { return dl_queue_share > 0 ? dl_queue_share : 1.0 / bs_count; }
  double lambda_queue() const { return lambda_total() * queue_share(); }
  double packet_prob() const { return packet_rate_hz * t_f_s; }
};

// Sensor placements are part of the scenario: uniform distances on
// [min_distance, cell_radius], drawn from the scenario seed.
std::vector<double> sensor_distances(const ScenarioConfig& sc);
std::vector<double> sensor_alphas(const ScenarioConfig& sc);

LinkParams ul_link(const ScenarioConfig& sc, double alpha);
LinkParams dl_link(const ScenarioConfig& sc);  // worst user at the cell edge
SolverConfig solver_config(const ScenarioConfig& sc);

}  // namespace bandplan
