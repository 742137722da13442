//
// Copyright 2026 The serialpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SERIALPRIV_STRATEGY_HPP_
#define SERIALPRIV_STRATEGY_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "serialpriv/model.hpp"
#include "serialpriv/probability.hpp"
#include "serialpriv/rational.hpp"

namespace serialpriv {

// Thrown when the constant-ratio strategy is asked to cover a linked release
// beyond its horizon: the fixed ratio only guarantees the bound for k_prime
// linked releases.
struct HorizonExceededError : std::runtime_error {
  explicit HorizonExceededError(const std::string& what) : std::runtime_error(what) {}
};

// The group-size ratio a group must reach for one (individual, value) pair,
// with the integer size it implies for a given in-group value count.
struct RatioRequirement {
  Rational target_ratio;

  std::int64_t min_group_size_for(std::int64_t value_count) const {
    return static_cast<std::int64_t>(
        ceil_to_int(target_ratio * Rational(value_count)).get_si());
  }
};

// Fixed ratio that keeps the linkage probability within 1/ell across k_prime
// linked releases: the real root of 1 - (1 - 1/r)^k_prime = 1/ell, located by
// rational bisection to within 1e-9 and rounded up, so the returned ratio is
// exactly verified safe: (1 - 1/r)^k_prime >= 1 - 1/ell holds in exact
// arithmetic. k_prime = 1 returns exactly ell.
Rational constant_ratio(int ell, int k_prime);

// alpha times the minimum feasible ratio for the next linked release. The
// headroom factor keeps future releases feasible; alpha must exceed 1.
// Propagates InfeasibleRatioError from min_ratio.
Rational geometric_ratio(std::span<const HistoryEntry> history, int ell, const Rational& alpha);

// Strategy dispatch: the ratio the next linked release must meet for a pair
// with the given linked history. Constant-ratio ignores the history's
// contents but refuses once it holds k_prime linked entries.
RatioRequirement plan_ratio(std::span<const HistoryEntry> history, const PrivacyParams& params);

// plan_ratio with infeasibility (and horizon exhaustion) folded into an
// empty result instead of an exception; the anonymizer's suppression path.
std::optional<RatioRequirement> try_plan_ratio(std::span<const HistoryEntry> history,
                                               const PrivacyParams& params);

struct SchedulePoint {
  int release = 0;          // 1-based linked-release ordinal
  Rational ratio;           // planned group-size ratio
  std::int64_t group_size;  // ceiled size at value count 1
};

// Simulates consecutive linked releases, each published at the strategy's
// planned ratio with a single occurrence of the value and integer-ceiled
// group size, and returns the resulting ratio trend.
std::vector<SchedulePoint> ratio_schedule(const PrivacyParams& params, int releases);

}  // namespace serialpriv

#endif  // SERIALPRIV_STRATEGY_HPP_
