#pragma once

namespace gridsmpc {

// Kinematic bicycle, center-of-gravity reference point.
struct EvParams {
  double lr = 1.5;  // CoG to rear axle [m]
  double lf = 1.5;  // CoG to front axle [m]
  double length = 6.0;
  double width = 2.0;
};

struct EvState {
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;  // heading [rad]
  double v = 0.0;    // speed [m/s]
};

struct EvInput {
  double delta_f = 0.0;  // front steering angle [rad]
  double a = 0.0;        // acceleration [m/s^2]
};

// Time derivatives (dx/dt, dy/dt, dpsi/dt, dv/dt) packed in an EvState.
// Throws std::domain_error when |delta_f| >= pi/2.
EvState continuous_derivatives(const EvParams& p, const EvState& s, const EvInput& u);

// One forward-Euler step of length dt.
EvState discrete_step(const EvParams& p, const EvState& s, const EvInput& u, double dt);

}  // namespace gridsmpc
