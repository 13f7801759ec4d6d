#include "bandplan/scenario.hpp"

#include "bandplan/rng.hpp"

namespace bandplan {

std::vector<double> sensor_distances(const ScenarioConfig& sc) {
  Philox g(sc.seed);
  std::vector<double> d(sc.sensors);
  for (int i = 0; i < sc.sensors; ++i)
    d[i] = sc.min_distance_m +
           (sc.cell_radius_m - sc.min_distance_m) * uniform_open(g, stream::placement, i);
  return d;
}

std::vector<double> sensor_alphas(const ScenarioConfig& sc) {
  auto d = sensor_distances(sc);
  std::vector<double> a(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a[i] = path_gain_linear(d[i]);
  return a;
}

LinkParams ul_link(const ScenarioConfig& sc, double alpha) {
  return {alpha,  sc.sensor_power_w, sc.noise_density_w_hz, sc.phi,
          sc.nt,  sc.packet_bits,    sc.t_f_s};
}

LinkParams dl_link(const ScenarioConfig& sc) {
  return {path_gain_linear(sc.cell_radius_m),
          sc.bs_power_w,
          sc.noise_density_w_hz,
          sc.phi,
          sc.nt,
          sc.packet_bits,
          sc.t_f_s};
}

SolverConfig solver_config(const ScenarioConfig& sc) {
  SolverConfig cfg;
  cfg.n_max = sc.n_max;
  cfg.w_c_hz = sc.w_c_hz;
  cfg.b0_hz = sc.b0_hz;
  cfg.delta_b_hz = sc.delta_b_hz;
  return cfg;
}

}  // namespace bandplan
