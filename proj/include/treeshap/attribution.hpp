// Copyright 2026 The treeshap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREESHAP_ATTRIBUTION_HPP_
#define TREESHAP_ATTRIBUTION_HPP_

#include <algorithm>
#include <cmath>

#include "treeshap/model.hpp"

namespace treeshap {

/// Additive explanation of one prediction: prediction ~= phi0 + sum(phi).
template <typename Scalar>
struct Attribution {
  Scalar phi0 = 0;
  Vector<Scalar> phi;

  Scalar total() const { return phi0 + phi.sum(); }

  Attribution& operator+=(const Attribution& other) {
    phi0 += other.phi0;
    phi += other.phi;
    return *this;
  }
};

using AttributionVector = Attribution<double>;

inline constexpr double kLocalAccuracyRelTol = 1e-9;

/// |phi0 + sum(phi) - prediction| <= rel_tol * max(1, |prediction|).
template <typename Scalar>
bool locally_accurate(const Attribution<Scalar>& a, Scalar prediction,
                      double rel_tol = kLocalAccuracyRelTol) {
  const double err = std::abs(static_cast<double>(a.total() - prediction));
  return err <= rel_tol * std::max(1.0, std::abs(static_cast<double>(prediction)));
}

}  // namespace treeshap

#endif  // TREESHAP_ATTRIBUTION_HPP_
