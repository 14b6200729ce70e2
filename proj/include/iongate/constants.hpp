// Copyright 2026 The iongate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "iongate/common.hpp"

namespace iongate {

// CODATA 2018 values, SI units.
inline constexpr double kHbar = 1.054571817e-34;         // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m

struct IonSpecies {
  double mass = 0.0;    // kg
  double charge = 0.0;  // C
  std::string label;
};

inline IonSpecies make_species(double mass_amu, double charge_e,
                               std::string label) {
  if (mass_amu <= 0.0) throw validation_error("ion mass must be positive");
  if (charge_e <= 0.0) throw validation_error("ion charge must be positive");
  return {mass_amu * kAtomicMassUnit, charge_e * kElementaryCharge,
          std::move(label)};
}

inline IonSpecies ca40() { return make_species(39.9625909, 1.0, "Ca40"); }

/// Q^2 / 4 pi eps0, the Coulomb coupling prefactor (J m).
inline double coulomb_coupling(const IonSpecies& s) {
  return s.charge * s.charge / (2.0 * kTwoPi * kVacuumPermittivity);
}

}  // namespace iongate
