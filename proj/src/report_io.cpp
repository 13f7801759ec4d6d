#include "bandplan/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bandplan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct NumberWithUnit {
  double value;
  std::string unit;  // possibly empty
};

// Context carried into every value conversion so errors cite file:line.
struct At {
  const std::string& name;
  int line;
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(name + ":" + std::to_string(line) + ": " + msg);
  }
};

NumberWithUnit number_with_unit(const std::string& text, const At& at) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin) at.fail("expected a number, got '" + text + "'");
  return {v, trim(std::string(end))};
}

double plain_number(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (!nu.unit.empty()) at.fail("value '" + text + "' takes no unit");
  return nu.value;
}

long long plain_integer(const std::string& text, const At& at) {
  double v = plain_number(text, at);
  long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v) at.fail("expected an integer, got '" + text + "'");
  return i;
}

double to_hz(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit == "Hz") return nu.value;
  if (nu.unit == "kHz") return nu.value * 1e3;
  if (nu.unit == "MHz") return nu.value * 1e6;
  if (nu.unit == "GHz") return nu.value * 1e9;
  at.fail("bandwidth '" + text + "' needs a unit (Hz, kHz, MHz, GHz)");
}

double to_seconds(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit == "s") return nu.value;
  if (nu.unit == "ms") return nu.value * 1e-3;
  if (nu.unit == "us") return nu.value * 1e-6;
  at.fail("time '" + text + "' needs a unit (s, ms, us)");
}

double to_watts(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit == "dBm") return dbm_to_watt(nu.value);
  if (nu.unit == "W") return nu.value;
  if (nu.unit == "mW") return nu.value * 1e-3;
  at.fail("power '" + text + "' needs a unit (dBm, W, mW)");
}

double to_watts_per_hz(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit == "dBm/Hz") return dbm_to_watt(nu.value);
  if (nu.unit == "W/Hz") return nu.value;
  at.fail("noise density '" + text + "' needs a unit (dBm/Hz, W/Hz)");
}

double to_meters(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit.empty() || nu.unit == "m") return nu.value;
  if (nu.unit == "km") return nu.value * 1e3;
  at.fail("distance '" + text + "' has unknown unit '" + nu.unit + "'");
}

double to_rate_hz(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit.empty() || nu.unit == "/s" || nu.unit == "Hz") return nu.value;
  at.fail("rate '" + text + "' has unknown unit '" + nu.unit + "'");
}

double to_db_value(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit.empty() || nu.unit == "dB") return nu.value;
  at.fail("'" + text + "' should be plain or in dB");
}

double to_linear_or_db(const std::string& text, const At& at) {
  auto nu = number_with_unit(text, at);
  if (nu.unit.empty()) return nu.value;
  if (nu.unit == "dB") return db_to_linear(nu.value);
  at.fail("'" + text + "' should be plain or in dB");
}

double to_fraction(const std::string& text, const At& at) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    double num = plain_number(trim(text.substr(0, slash)), at);
    double den = plain_number(trim(text.substr(slash + 1)), at);
    if (den == 0) at.fail("fraction with zero denominator");
    return num / den;
  }
  return plain_number(text, at);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out += '"';
      for (char c : f) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    } else {
      out += f;
    }
  }
  return out;
}

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name) {
  ScenarioConfig sc;
  double packet_probability = -1;
  bool have_eps_u = false, have_eps_d = false, have_eps_q = false;

  using Handler = std::function<void(ScenarioConfig&, const std::string&, const At&)>;
  static const std::map<std::string, Handler> handlers = {
      {"system.bs", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.bs_count = static_cast<int>(plain_integer(v, a)); }},
      {"system.antennas", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.nt = static_cast<int>(plain_integer(v, a)); }},
      {"system.cell_radius", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.cell_radius_m = to_meters(v, a); }},
      {"system.min_distance", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.min_distance_m = to_meters(v, a); }},
      {"system.reuse", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.reuse_factor = to_fraction(v, a); }},
      {"system.w_c", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.w_c_hz = to_hz(v, a); }},
      {"system.b0", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.b0_hz = to_hz(v, a); }},
      {"system.t_f", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.t_f_s = to_seconds(v, a); }},
      {"devices.count", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.sensors = static_cast<int>(plain_integer(v, a)); }},
      {"devices.packet_rate", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.packet_rate_hz = to_rate_hz(v, a); }},
      {"devices.packet_bits", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.packet_bits = plain_number(v, a); }},
      {"devices.power", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.sensor_power_w = to_watts(v, a); }},
      {"bs.power", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.bs_power_w = to_watts(v, a); }},
      {"bs.noise_density", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.noise_density_w_hz = to_watts_per_hz(v, a); }},
      {"bs.phi", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.phi = to_linear_or_db(v, a); }},
      {"qos.d_max", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.d_max_s = to_seconds(v, a); }},
      {"qos.d_backhaul", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.d_backhaul_s = to_seconds(v, a); }},
      {"qos.eps_max", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.eps_max = plain_number(v, a); }},
      {"qos.eps_m", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.eps_m = plain_number(v, a); }},
      {"qos.dl_queue_share", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.dl_queue_share = to_fraction(v, a); }},
      {"qos.eps_grid_step", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.eps_grid_step = plain_number(v, a); }},
      {"solver.n_max", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.n_max = static_cast<int>(plain_integer(v, a)); }},
      {"solver.delta_b", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.delta_b_hz = to_hz(v, a); }},
      {"sim.seed", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.seed = static_cast<std::uint64_t>(plain_integer(v, a)); }},
      {"sim.frames", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.frames = plain_integer(v, a); }},
      {"sim.trials", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.trials = plain_integer(v, a); }},
      {"sim.drops", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.drops = static_cast<int>(plain_integer(v, a)); }},
      {"sim.shadowing_sigma", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.shadowing_sigma_db = to_db_value(v, a); }},
      {"sim.relaxed_eps", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.relaxed_eps = plain_number(v, a); }},
      {"sweep.antennas", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.sweep_antennas.clear();
         for (const auto& tok : split_list(v))
           s.sweep_antennas.push_back(static_cast<int>(plain_integer(tok, a))); }},
      {"sweep.distances", [](ScenarioConfig& s, const std::string& v, const At& a) {
         s.sweep_distances.clear();
         for (const auto& tok : split_list(v)) s.sweep_distances.push_back(to_meters(tok, a)); }},
  };

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    At at{name, line_no};
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') at.fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) at.fail("empty key");
    if (section.empty()) at.fail("key '" + key + "' appears before any [section]");
    std::string full = section + "." + key;

    // keys with extra bookkeeping
    if (full == "devices.packet_probability") {
      packet_probability = plain_number(value, at);
      continue;
    }
    if (full == "qos.split") {
      if (value == "equal") sc.split = ScenarioConfig::Split::equal;
      else if (value == "grid") sc.split = ScenarioConfig::Split::grid;
      else if (value == "fixed") sc.split = ScenarioConfig::Split::fixed;
      else at.fail("split must be equal, grid, or fixed");
      continue;
    }
    if (full == "qos.eps_u") { sc.eps_u = plain_number(value, at); have_eps_u = true; continue; }
    if (full == "qos.eps_d") { sc.eps_d = plain_number(value, at); have_eps_d = true; continue; }
    if (full == "qos.eps_q") { sc.eps_q = plain_number(value, at); have_eps_q = true; continue; }

    auto it = handlers.find(full);
    if (it == handlers.end()) at.fail("unknown key '" + full + "'");
    it->second(sc, value, at);
  }

  if (packet_probability >= 0) sc.packet_rate_hz = packet_probability / sc.t_f_s;

  auto fail = [&](const std::string& msg) { throw ParseError(name + ": " + msg); };
  if (sc.bs_count < 1) fail("system.bs must be >= 1");
  if (sc.nt < 1) fail("system.antennas must be >= 1");
  if (sc.sensors < 0) fail("devices.count must be >= 0");
  if (!(sc.t_f_s > 0)) fail("system.t_f must be positive");
  if (!(sc.b0_hz > 0) || !(sc.w_c_hz >= sc.b0_hz))
    fail("system bandwidths need w_c >= b0 > 0");
  if (!(sc.cell_radius_m > sc.min_distance_m) || !(sc.min_distance_m > 0))
    fail("system distances need cell_radius > min_distance > 0");
  if (!(sc.eps_max > 0) || !(sc.eps_max < 1)) fail("qos.eps_max must lie in (0, 1)");
  if (!(sc.eps_m > 0) || !(sc.eps_m < 1)) fail("qos.eps_m must lie in (0, 1)");
  if (!(sc.packet_bits > 0)) fail("devices.packet_bits must be positive");
  if (!(sc.packet_rate_hz >= 0)) fail("devices.packet_rate must be >= 0");
  if (sc.packet_prob() > 1.0) fail("devices.packet_rate exceeds one packet per frame");
  if (sc.n_max < 1) fail("solver.n_max must be >= 1");
  if (sc.split == ScenarioConfig::Split::fixed) {
    if (!(have_eps_u && have_eps_d && have_eps_q))
      fail("split = fixed needs qos.eps_u, qos.eps_d, qos.eps_q");
    if (!(sc.eps_u > 0) || !(sc.eps_d > 0) || !(sc.eps_q > 0))
      fail("fixed error shares must be positive");
    if (sc.eps_u + sc.eps_d + sc.eps_q > sc.eps_max * (1 + 1e-9))
      fail("fixed error shares exceed qos.eps_max");
  }
  if (!(sc.eps_grid_step > 0) || !(sc.eps_grid_step <= 0.5))
    fail("qos.eps_grid_step must lie in (0, 0.5]");
  if (!(sc.reuse_factor > 0) || !(sc.reuse_factor <= 1))
    fail("system.reuse must lie in (0, 1]");
  if (!(sc.dl_queue_share >= 0) || !(sc.dl_queue_share <= 1))
    fail("qos.dl_queue_share must lie in [0, 1]");
  if (sc.frames < 0 || sc.trials < 0 || sc.drops < 0) fail("sim sizes must be >= 0");
  return sc;
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  return parse_scenario_text(read_file(path), path);
}

namespace {

std::map<std::string, std::string> parse_kv_file(const std::string& text,
                                                 const std::string& name) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(name + ":" + std::to_string(line_no) + ": expected 'key = value'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

double kv_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 const std::string& name) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(name + ": missing key '" + key + "'");
  return std::strtod(it->second.c_str(), nullptr);
}

long long kv_int(const std::map<std::string, std::string>& kv, const std::string& key,
                 const std::string& name) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(name + ": missing key '" + key + "'");
  return std::strtoll(it->second.c_str(), nullptr, 10);
}

std::string kv_str(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  return it == kv.end() ? "" : it->second;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_report(const std::string& dir, const ScenarioConfig& sc, const ConfigReport& rep,
                  const std::string& scenario_hash) {
  std::string t;
  t += "format = bandplan-report-1\n";
  t += "scenario_hash = " + scenario_hash + "\n";
  t += "feasible = " + std::string(rep.feasible ? "1" : "0") + "\n";
  t += "infeasible_reason = " + rep.infeasible_reason + "\n";
  t += "d_u_frames = " + std::to_string(rep.delay.d_u) + "\n";
  t += "d_d_frames = " + std::to_string(rep.delay.d_d) + "\n";
  t += "d_q_frames = " + std::to_string(rep.delay.d_q) + "\n";
  t += "eps_u = " + format_double(rep.eps.eps_u) + "\n";
  t += "eps_d = " + format_double(rep.eps.eps_d) + "\n";
  t += "eps_q = " + format_double(rep.eps.eps_q) + "\n";
  t += "eb_plus = " + std::to_string(rep.eb_plus) + "\n";
  t += "m_a_th = " + std::to_string(rep.m_a_th) + "\n";
  t += "ul_units = " + std::to_string(rep.ul_units) + "\n";
  t += "ul_bound_hz = " + format_double(rep.ul_bound_hz) + "\n";
  t += "dl_bound_hz = " + format_double(rep.dl_bound_hz) + "\n";
  t += "total_hz = " + format_double(rep.total_hz) + "\n";
  if (rep.dl_plan) {
    t += "dl_n = " + std::to_string(rep.dl_plan->n) + "\n";
    t += "dl_b_units = " + std::to_string(rep.dl_plan->b_units) + "\n";
    t += "dl_b_hz = " + format_double(rep.dl_plan->b_hz) + "\n";
    t += "dl_e_th = " + format_double(rep.dl_plan->e_th) + "\n";
    t += "dl_g_th = " + format_double(rep.dl_plan->g_th) + "\n";
    t += "dl_loss = " + format_double(rep.dl_plan->loss) + "\n";
  }
  t += "sensors = " + std::to_string(sc.sensors) + "\n";
  if (!rep.ul_plans.empty()) t += "plans_file = plans.csv\n";
  write_file((std::filesystem::path(dir) / "report.txt").string(), t);
}

void write_plans_csv(const std::string& path, const std::vector<double>& distances,
                     const std::vector<double>& alphas, const std::vector<LinkPlan>& plans) {
  std::string t = "sensor,distance_m,alpha,n,b_units,b_hz,e_th,g_th,loss\n";
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const LinkPlan& p = plans[i];
    t += csv_row({std::to_string(i), format_double(distances[i]), format_double(alphas[i]),
                  std::to_string(p.n), std::to_string(p.b_units), format_double(p.b_hz),
                  format_double(p.e_th), format_double(p.g_th), format_double(p.loss)}) +
         "\n";
  }
  write_file(path, t);
}

LoadedReport read_report(const std::string& report_path) {
  const std::string text = read_file(report_path);
  auto kv = parse_kv_file(text, report_path);
  if (kv_str(kv, "format") != "bandplan-report-1")
    throw ParseError(report_path + ": not a bandplan report (bad format line)");
  LoadedReport out;
  out.scenario_hash = kv_str(kv, "scenario_hash");
  ConfigReport& rep = out.rep;
  rep.feasible = kv_int(kv, "feasible", report_path) != 0;
  rep.infeasible_reason = kv_str(kv, "infeasible_reason");
  rep.delay.d_u = static_cast<int>(kv_int(kv, "d_u_frames", report_path));
  rep.delay.d_d = static_cast<int>(kv_int(kv, "d_d_frames", report_path));
  rep.delay.d_q = static_cast<int>(kv_int(kv, "d_q_frames", report_path));
  rep.eps.eps_u = kv_double(kv, "eps_u", report_path);
  rep.eps.eps_d = kv_double(kv, "eps_d", report_path);
  rep.eps.eps_q = kv_double(kv, "eps_q", report_path);
  rep.eb_plus = static_cast<int>(kv_int(kv, "eb_plus", report_path));
  rep.m_a_th = kv_int(kv, "m_a_th", report_path);
  rep.ul_units = kv_int(kv, "ul_units", report_path);
  rep.ul_bound_hz = kv_double(kv, "ul_bound_hz", report_path);
  rep.dl_bound_hz = kv_double(kv, "dl_bound_hz", report_path);
  rep.total_hz = kv_double(kv, "total_hz", report_path);
  if (kv.count("dl_n")) {
    LinkPlan dl;
    dl.n = static_cast<int>(kv_int(kv, "dl_n", report_path));
    dl.b_units = kv_int(kv, "dl_b_units", report_path);
    dl.b_hz = kv_double(kv, "dl_b_hz", report_path);
    dl.e_th = kv_double(kv, "dl_e_th", report_path);
    dl.g_th = kv_double(kv, "dl_g_th", report_path);
    dl.loss = kv_double(kv, "dl_loss", report_path);
    rep.dl_plan = dl;
  }
  const std::string plans_file = kv_str(kv, "plans_file");
  if (!plans_file.empty()) {
    const auto dir = std::filesystem::path(report_path).parent_path();
    const std::string ptext = read_file((dir / plans_file).string());
    std::istringstream in(ptext);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (header) {
        header = false;
        continue;
      }
      auto f = split_csv_line(line);
      if (f.size() != 9) throw ParseError(plans_file + ": bad row '" + line + "'");
      LinkPlan p;
      p.n = std::atoi(f[3].c_str());
      p.b_units = std::atoll(f[4].c_str());
      p.b_hz = std::strtod(f[5].c_str(), nullptr);
      p.e_th = std::strtod(f[6].c_str(), nullptr);
      p.g_th = std::strtod(f[7].c_str(), nullptr);
      p.loss = std::strtod(f[8].c_str(), nullptr);
      rep.ul_plans.push_back(p);
    }
  }
  return out;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::string& scenario_path, const std::string& scenario_hash,
                    const std::vector<std::string>& outputs) {
  std::string t;
  t += "tool = bandplan 1.0.0\n";
  t += "command = " + command + "\n";
  t += "scenario = " + scenario_path + "\n";
  t += "scenario_hash = " + scenario_hash + "\n";
  std::time_t now = std::time(nullptr);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  t += "wall_clock = " + std::string(ts) + "\n";
  for (const auto& o : outputs) t += "output = " + o + "\n";
  write_file(path, t);
}

}  // namespace bandplan
