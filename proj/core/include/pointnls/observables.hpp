#pragma once

#include <optional>

#include "pointnls/field.hpp"

namespace pointnls {

struct ObservableRecord {
  double t;
  double mass;
  double energy;
  double eta;  // NaN for p <= 3
  double gn;   // NaN when psi(0) = 0
  double gap;  // 4 ||psi_x||^2 - 2 |psi(0)|^{p+1}
};

struct MassEnergy {
  double mass;
  double energy;
};

/// `origin` replaces the grid sample at 0 in the point terms (the solver's q is more accurate).
MassEnergy mass_energy(const FieldSnapshot& snap, double p, std::optional<cplx> origin = {});

/// ||psi||^{(1-sc)/sc} ||psi_x|| over the same quantity for phi_0. Requires p > 3.
double eta(const FieldSnapshot& snap, double p);
double eta_from_norms(double mass, double grad_sq, double p);

/// J = ||psi|| ||psi_x|| / |psi(0)|^2 >= 1. Throws std::domain_error if psi(0) = 0.
double gn_functional(const FieldSnapshot& snap, std::optional<cplx> origin = {});

double coercivity_gap(const FieldSnapshot& snap, double p, std::optional<cplx> origin = {});

ObservableRecord observe(const FieldSnapshot& snap, double p, std::optional<cplx> origin = {});

}  // namespace pointnls
