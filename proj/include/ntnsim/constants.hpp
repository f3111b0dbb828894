#ifndef NTNSIM_CONSTANTS_HPP
#define NTNSIM_CONSTANTS_HPP

// Physical constants and unit helpers shared across the simulator.

namespace ntnsim {

inline constexpr double kPi = 3.14159265358979323846;

// Spherical Earth model (no flattening).
inline constexpr double kEarthRadiusKm = 6371.0;

// Earth gravitational parameter [km^3/s^2].
inline constexpr double kMuEarthKm3S2 = 398600.4418;

// Earth rotation rate [rad/s], zero Greenwich offset at epoch.
inline constexpr double kEarthRotationRadS = 7.2921159e-5;

// Boltzmann constant [J/K].
inline constexpr double kBoltzmannJPerK = 1.380649e-23;

inline constexpr char kVersion[] = "0.1.0";

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace ntnsim

#endif  // NTNSIM_CONSTANTS_HPP
