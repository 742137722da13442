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

#include "serialpriv/strategy.hpp"

namespace serialpriv {

namespace {

// Exact safety test: at ratio r, do k_prime linked releases stay within the
// bound? Equivalent to ((r-1)/r)^k_prime >= (ell-1)/ell.
bool ratio_is_safe(const Rational& r, int ell, int k_prime) {
  const Rational survival = (r - Rational(1)) / r;
  return pow(survival, static_cast<unsigned>(k_prime)) >= Rational(ell - 1, ell);
}

}  // namespace

Rational constant_ratio(int ell, int k_prime) {
  if (ell < 2 || k_prime < 1) {
    throw std::invalid_argument("constant_ratio requires ell >= 2 and k_prime >= 1");
  }
  if (k_prime == 1) {
    return Rational(ell);
  }
  // 1 - (1 - 1/r)^k is strictly decreasing in r, so bisection brackets the
  // root. r = ell * k_prime is always safe: 1 - (1 - x)^k <= k * x.
  Rational lo(1);
  Rational hi(static_cast<std::int64_t>(ell) * k_prime, 1);
  const Rational tolerance(1, 1'000'000'000);
  while (hi - lo > tolerance) {
    Rational mid = (lo + hi) / Rational(2);
    if (ratio_is_safe(mid, ell, k_prime)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;  // the verified-safe side of the bracket
}

Rational geometric_ratio(std::span<const HistoryEntry> history, int ell, const Rational& alpha) {
  if (!(alpha > Rational(1))) {
    throw std::invalid_argument("alpha must exceed 1");
  }
  return alpha * min_ratio(history, ell);
}

RatioRequirement plan_ratio(std::span<const HistoryEntry> history, const PrivacyParams& params) {
  params.validate();
  if (params.strategy == Strategy::kConstantRatio) {
    if (static_cast<int>(history.size()) >= params.k_prime) {
      throw HorizonExceededError("constant-ratio horizon of " +
                                 std::to_string(params.k_prime) +
                                 " linked releases is exhausted");
    }
    return RatioRequirement{constant_ratio(params.ell, params.k_prime)};
  }
  return RatioRequirement{geometric_ratio(history, params.ell, params.alpha)};
}

std::optional<RatioRequirement> try_plan_ratio(std::span<const HistoryEntry> history,
                                               const PrivacyParams& params) {
  try {
    return plan_ratio(history, params);
  } catch (const InfeasibleRatioError&) {
    return std::nullopt;
  } catch (const HorizonExceededError&) {
    return std::nullopt;
  }
}

std::vector<SchedulePoint> ratio_schedule(const PrivacyParams& params, int releases) {
  std::vector<SchedulePoint> schedule;
  std::vector<HistoryEntry> history;
  for (int k = 1; k <= releases; ++k) {
    const RatioRequirement requirement = plan_ratio(history, params);
    const std::int64_t size = requirement.min_group_size_for(1);
    schedule.push_back({k, requirement.target_ratio, size});
    history.push_back({k, size, 1});
  }
  return schedule;
}

}  // namespace serialpriv
