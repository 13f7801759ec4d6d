#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "bandplan/report_io.hpp"
#include "bandplan/units.hpp"

using namespace bandplan;
namespace fs = std::filesystem;

namespace {

std::string parse_failure(const std::string& text) {
  try {
    parse_scenario_text(text, "mem");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& needle) {
  return msg.find(needle) != std::string::npos;
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("bandplan_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("an empty scenario file keeps every default") {
  const auto sc = parse_scenario_text("", "mem");
  const ScenarioConfig ref;
  CHECK(sc.nt == ref.nt);
  CHECK(sc.sensors == ref.sensors);
  CHECK(sc.b0_hz == ref.b0_hz);
  CHECK(sc.w_c_hz == ref.w_c_hz);
  CHECK(sc.eps_max == ref.eps_max);
  CHECK(sc.d_max_s == ref.d_max_s);
  CHECK(sc.seed == ref.seed);
  CHECK(sc.split == ScenarioConfig::Split::equal);
  CHECK(sc.sweep_antennas == ref.sweep_antennas);
  CHECK(sc.sweep_distances == ref.sweep_distances);
}

TEST_CASE("every key and unit lands on the right field") {
  const std::string text = R"(# reference deployment, tweaked everywhere
; alternate comment marker
[system]
bs = 2
antennas = 16
cell_radius = 0.3 km
min_distance = 40
reuse = 1/4
w_c = 600 kHz
b0 = 25 kHz
t_f = 100 us

[devices]
count = 12
packet_rate = 50 /s
packet_bits = 96
power = 20 dBm

[bs]
power = 5 W
noise_density = -170 dBm/Hz
phi = 3 dB

[qos]
d_max = 1.3 ms
d_backhaul = 200 us
eps_max = 1e-6
eps_m = 1e-12
dl_queue_share = 0.5
split = fixed
eps_u = 4e-7
eps_d = 4e-7
eps_q = 2e-7
eps_grid_step = 0.1

[solver]
n_max = 6
delta_b = 1 kHz

[sim]
seed = 77
frames = 1000
trials = 2000
drops = 30
shadowing_sigma = 6 dB
relaxed_eps = 0.01

[sweep]
antennas = 4, 8
distances = 100 200
)";
  const auto sc = parse_scenario_text(text, "mem");
  CHECK(sc.bs_count == 2);
  CHECK(sc.nt == 16);
  CHECK(sc.cell_radius_m == doctest::Approx(300).epsilon(1e-15));
  CHECK(sc.min_distance_m == 40);
  CHECK(sc.reuse_factor == 0.25);
  CHECK(sc.w_c_hz == doctest::Approx(600e3).epsilon(1e-15));
  CHECK(sc.b0_hz == doctest::Approx(25e3).epsilon(1e-15));
  CHECK(sc.t_f_s == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(sc.sensors == 12);
  CHECK(sc.packet_rate_hz == 50);
  CHECK(sc.packet_bits == 96);
  CHECK(sc.sensor_power_w == doctest::Approx(dbm_to_watt(20)).epsilon(1e-15));
  CHECK(sc.bs_power_w == 5);
  CHECK(sc.noise_density_w_hz == doctest::Approx(dbm_to_watt(-170)).epsilon(1e-15));
  CHECK(sc.phi == doctest::Approx(db_to_linear(3)).epsilon(1e-15));
  CHECK(sc.d_max_s == doctest::Approx(1.3e-3).epsilon(1e-15));
  CHECK(sc.d_backhaul_s == doctest::Approx(2e-4).epsilon(1e-15));
  CHECK(sc.eps_max == 1e-6);
  CHECK(sc.eps_m == 1e-12);
  CHECK(sc.dl_queue_share == 0.5);
  CHECK(sc.split == ScenarioConfig::Split::fixed);
  CHECK(sc.eps_u == 4e-7);
  CHECK(sc.eps_d == 4e-7);
  CHECK(sc.eps_q == 2e-7);
  CHECK(sc.eps_grid_step == 0.1);
  CHECK(sc.n_max == 6);
  CHECK(sc.delta_b_hz == doctest::Approx(1e3).epsilon(1e-15));
  CHECK(sc.seed == 77);
  CHECK(sc.frames == 1000);
  CHECK(sc.trials == 2000);
  CHECK(sc.drops == 30);
  CHECK(sc.shadowing_sigma_db == 6);
  CHECK(sc.relaxed_eps == 0.01);
  CHECK(sc.sweep_antennas == std::vector<int>{4, 8});
  CHECK(sc.sweep_distances == std::vector<double>{100, 200});
}

TEST_CASE("arrival probability resolves against the final frame length") {
  const auto sc = parse_scenario_text(
      "[devices]\npacket_probability = 0.01\n[system]\nt_f = 200 us\n", "mem");
  CHECK(sc.packet_rate_hz == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("parse failures cite the file and line") {
  CHECK(mentions(parse_failure("[system]\nbogus = 1\n"), "mem:2: unknown key 'system.bogus'"));
  CHECK(mentions(parse_failure("antennas = 8\n"), "mem:1:"));
  CHECK(mentions(parse_failure("antennas = 8\n"), "before any [section]"));
  CHECK(mentions(parse_failure("[system]\nantennas = eight\n"), "expected a number"));
  CHECK(mentions(parse_failure("[system]\nantennas = 2.5\n"), "expected an integer"));
  CHECK(mentions(parse_failure("[system]\nw_c = 500\n"), "needs a unit"));
  CHECK(mentions(parse_failure("[qos]\neps_max = 1e-7 Hz\n"), "takes no unit"));
  CHECK(mentions(parse_failure("[system]\nantennas 8\n"), "expected 'key = value'"));
  CHECK(mentions(parse_failure("[system\nantennas = 8\n"), "unterminated"));
  CHECK(mentions(parse_failure("[qos]\nsplit = both\n"), "split must be"));
  CHECK(mentions(parse_failure("[system]\nreuse = 1/0\n"), "zero denominator"));
}

TEST_CASE("cross-field validation happens after parsing") {
  CHECK(mentions(parse_failure("[qos]\nsplit = fixed\n"), "needs qos.eps_u"));
  CHECK(mentions(parse_failure("[qos]\nsplit = fixed\neps_u = 1e-7\neps_d = 1e-7\neps_q = 1e-7\n"),
                 "exceed"));
  CHECK(mentions(parse_failure("[system]\nw_c = 10 kHz\nb0 = 20 kHz\n"), "w_c >= b0"));
  CHECK(mentions(parse_failure("[qos]\neps_max = 0\n"), "(0, 1)"));
  CHECK(mentions(parse_failure("[system]\ncell_radius = 30\nmin_distance = 50\n"),
                 "cell_radius > min_distance"));
  CHECK(mentions(parse_failure("[qos]\neps_grid_step = 0.7\n"), "(0, 0.5]"));
}

TEST_CASE("content hashing is pinned") {
  CHECK(fnv1a64("") == 14695981039346656037ull);
  CHECK(fnv1a64("a") == 12638187200555641996ull);
  CHECK(fnv1a64("foobar") == 9625390261332436968ull);
  CHECK(fnv1a64("[system]\nantennas = 8\n") == 1726961830927499607ull);
  CHECK(hash_hex(0) == "0000000000000000");
  CHECK(hash_hex(0xdeadbeefull) == "00000000deadbeef");
  CHECK(hash_hex(fnv1a64("")) == "cbf29ce484222325");
}

TEST_CASE("printed doubles survive the round trip") {
  for (double v : {0.45e6, 1e-7 / 3, 6.02214076e23, 1.0 / 3, 5.9e-2, 1e-300}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv rows quote exactly the awkward fields") {
  CHECK(csv_row({"a", "b", "c"}) == "a,b,c");
  CHECK(csv_row({"a,b"}) == "\"a,b\"");
  CHECK(csv_row({"say \"hi\""}) == "\"say \"\"hi\"\"\"");
  CHECK(csv_row({"two\nlines"}) == "\"two\nlines\"");
  CHECK(csv_row({"", "x"}) == ",x");
}

TEST_CASE("reports round-trip bit for bit") {
  ScenarioConfig sc;
  sc.sensors = 10;
  const auto distances = sensor_distances(sc);
  const auto alphas = sensor_alphas(sc);
  const auto rep = total_bandwidth_bound(sc, alphas, {6, 1, 3}, equal_split(sc.eps_max));
  REQUIRE(rep.feasible);

  const auto dir = fresh_dir("roundtrip");
  write_report(dir.string(), sc, rep, "00ff00ff00ff00ff");
  write_plans_csv((dir / "plans.csv").string(), distances, alphas, rep.ul_plans);

  const auto loaded = read_report((dir / "report.txt").string());
  CHECK(loaded.scenario_hash == "00ff00ff00ff00ff");
  const auto& r = loaded.rep;
  CHECK(r.feasible == rep.feasible);
  CHECK(r.delay.d_u == rep.delay.d_u);
  CHECK(r.delay.d_d == rep.delay.d_d);
  CHECK(r.delay.d_q == rep.delay.d_q);
  CHECK(r.eps.eps_u == rep.eps.eps_u);
  CHECK(r.eps.eps_d == rep.eps.eps_d);
  CHECK(r.eps.eps_q == rep.eps.eps_q);
  CHECK(r.eb_plus == rep.eb_plus);
  CHECK(r.m_a_th == rep.m_a_th);
  CHECK(r.ul_units == rep.ul_units);
  CHECK(r.ul_bound_hz == rep.ul_bound_hz);
  CHECK(r.dl_bound_hz == rep.dl_bound_hz);
  CHECK(r.total_hz == rep.total_hz);
  REQUIRE(r.dl_plan.has_value());
  CHECK(r.dl_plan->n == rep.dl_plan->n);
  CHECK(r.dl_plan->b_units == rep.dl_plan->b_units);
  CHECK(r.dl_plan->b_hz == rep.dl_plan->b_hz);
  CHECK(r.dl_plan->e_th == rep.dl_plan->e_th);
  CHECK(r.dl_plan->g_th == rep.dl_plan->g_th);
  CHECK(r.dl_plan->loss == rep.dl_plan->loss);
  REQUIRE(r.ul_plans.size() == rep.ul_plans.size());
  for (std::size_t i = 0; i < r.ul_plans.size(); ++i) {
    CHECK(r.ul_plans[i].n == rep.ul_plans[i].n);
    CHECK(r.ul_plans[i].b_units == rep.ul_plans[i].b_units);
    CHECK(r.ul_plans[i].b_hz == rep.ul_plans[i].b_hz);
    CHECK(r.ul_plans[i].e_th == rep.ul_plans[i].e_th);
    CHECK(r.ul_plans[i].g_th == rep.ul_plans[i].g_th);
    CHECK(r.ul_plans[i].loss == rep.ul_plans[i].loss);
  }
  fs::remove_all(dir);
}

TEST_CASE("infeasible reports keep their reason") {
  ScenarioConfig sc;
  sc.sensors = 0;
  ConfigReport rep;
  rep.delay = {3, 1, 1};
  rep.infeasible_reason = "no feasible delay split within the latency budget";

  const auto dir = fresh_dir("infeasible");
  write_report(dir.string(), sc, rep, "0123456789abcdef");
  const auto loaded = read_report((dir / "report.txt").string());
  CHECK(!loaded.rep.feasible);
  CHECK(loaded.rep.infeasible_reason == rep.infeasible_reason);
  CHECK(!loaded.rep.dl_plan.has_value());
  CHECK(loaded.rep.ul_plans.empty());
  fs::remove_all(dir);
}

TEST_CASE("reading rejects the wrong kind of file") {
  CHECK_THROWS_AS(read_report("/nonexistent/report.txt"), ParseError);
  const auto dir = fresh_dir("badformat");
  write_file((dir / "report.txt").string(), "format = something-else\n");
  CHECK_THROWS_AS(read_report((dir / "report.txt").string()), ParseError);
  CHECK_THROWS_AS(parse_scenario_file("/nonexistent/scenario.ini"), ParseError);
  fs::remove_all(dir);
}

TEST_CASE("manifests differ only in their wall clock") {
  const auto dir = fresh_dir("manifest");
  write_manifest((dir / "a.txt").string(), "optimize x.ini", "x.ini", "aa", {"report.txt"});
  write_manifest((dir / "b.txt").string(), "optimize x.ini", "x.ini", "aa", {"report.txt"});
  const auto strip = [](const std::string& text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string::npos) end = text.size();
      const std::string line = text.substr(pos, end - pos);
      if (line.rfind("wall_clock", 0) != 0) out += line + "\n";
      pos = end + 1;
    }
    return out;
  };
  const auto a = read_file((dir / "a.txt").string());
  const auto b = read_file((dir / "b.txt").string());
  CHECK(strip(a) == strip(b));
  CHECK(mentions(a, "tool = bandplan 1.0.0"));
  CHECK(mentions(a, "command = optimize x.ini"));
  CHECK(mentions(a, "wall_clock = "));
  CHECK(mentions(a, "output = report.txt"));
  fs::remove_all(dir);
}
