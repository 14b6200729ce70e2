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

#include <complex>
#include <stdexcept>
#include <string>

namespace iongate {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.1415926535897932384626433832795;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr complexd kImag{0.0, 1.0};

/// Rejected input: violates a documented precondition or invariant.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Laser/trap parameters outside the regime a model is valid in.
/// Carries the offending margin ratio.
class regime_error : public std::runtime_error {
 public:
  regime_error(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

/// Numerical failure: non-convergence, rank deficiency, step underflow.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear chain is not the stable crystal configuration.
class instability_error : public numerical_error {
 public:
  using numerical_error::numerical_error;
};

}  // namespace iongate
