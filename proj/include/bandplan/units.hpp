#pragma once
#include <cmath>

namespace bandplan {

// All internal quantities are SI-linear: watts, hertz, seconds.
// Conversions from the human-facing units happen at the parsing boundary.

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Urban micro path loss at distance d meters: 35.3 + 37.6 lg(d) dB.
inline double path_loss_db(double distance_m) { return 35.3 + 37.6 * std::log10(distance_m); }
inline double path_gain_linear(double distance_m) {
  return std::pow(10.0, -path_loss_db(distance_m) / 10.0);
}

}  // namespace bandplan
