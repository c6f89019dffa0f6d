#include "gridsmpc/ev_model.hpp"

#include <cmath>
#include <stdexcept>

namespace gridsmpc {

EvState continuous_derivatives(const EvParams& p, const EvState& s, const EvInput& u) {
  if (!(std::abs(u.delta_f) < M_PI / 2)) {
    throw std::domain_error("continuous_derivatives: |delta_f| >= pi/2");
  }
  double alpha = std::atan(p.lr / (p.lr + p.lf) * std::tan(u.delta_f));
  EvState d;
  d.x = s.v * std::cos(s.psi + alpha);
  d.y = s.v * std::sin(s.psi + alpha);
  d.psi = s.v / p.lr * std::sin(alpha);
  d.v = u.a;
  return d;
}

EvState discrete_step(const EvParams& p, const EvState& s, const EvInput& u, double dt) {
  EvState d = continuous_derivatives(p, s, u);
  return {s.x + dt * d.x, s.y + dt * d.y, s.psi + dt * d.psi, s.v + dt * d.v};
}

}  // namespace gridsmpc
