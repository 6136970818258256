////////////////////////////////////////////////////////////////////////////////
//                                                                            //
//  This file is part of factorapprox                                         //
//                                                                            //
//  Copyright 2026 factorapprox developers                                    //
//                                                                            //
//  Licensed under the Apache License, Version 2.0 (the "License");           //
//  you may not use this file except in compliance with the License.          //
//  You may obtain a copy of the License at                                   //
//                                                                            //
//      http://www.apache.org/licenses/LICENSE-2.0                            //
//                                                                            //
//  Unless required by applicable law or agreed to in writing, software       //
//  distributed under the License is distributed on an "AS IS" BASIS,         //
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.  //
//  See the License for the specific language governing permissions and       //
//  limitations under the License.                                            //
//                                                                            //
////////////////////////////////////////////////////////////////////////////////

#ifndef FACTORAPPROX_FIT_HPP
#define FACTORAPPROX_FIT_HPP

#include <optional>

#include "factorapprox/error.hpp"
#include "factorapprox/factor_solver.hpp"
#include "factorapprox/optimizer.hpp"
#include "factorapprox/series.hpp"

namespace factorapprox {

struct FitOptions {
  std::optional<Real> fixed_node;  // odd orders only
  OptimizeOptions optimize;
};

struct FitResult {
  FactorApproximant approximant;
  std::optional<OptimizationResult> optimization;
};

/// Even k: exact solve. Odd k: fixed node when given, optimized otherwise.
/// The series' prefactor tag and multiplier are carried over.
inline FitResult fit(const AnySeries& series, std::size_t k, const FitOptions& options = {}) {
  if (k < 2) fail(Errc::invalid_argument, "order must be at least 2");
  if (k > series_order(series))
    fail(Errc::invalid_argument,
         "order " + std::to_string(k) + " exceeds series order " + std::to_string(series_order(series)));
  const auto m = real_moments(series, k);
  FitResult out;
  if (k % 2 == 0) {
    if (options.fixed_node) fail(Errc::invalid_argument, "a fixed node applies to odd orders only");
    out.approximant = solve_even(m);
  } else if (options.fixed_node) {
    out.approximant = solve_odd_fixed_node(m, *options.fixed_node);
  } else {
    out.optimization = optimize_odd(m, options.optimize);
    out.approximant = out.optimization->approximant;
  }
  out.approximant.prefactor_tag = series_prefactor_tag(series);
  out.approximant.prefactor_multiplier = series_multiplier(series);
  return out;
}

}  // namespace factorapprox

#endif
