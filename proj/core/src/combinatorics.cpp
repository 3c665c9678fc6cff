// Copyright 2026 The Homophily Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "homophily/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "homophily/error.hpp"

namespace homophily {
namespace {

// Multiplies in (num - k) / (den - k) for k < count. Returns false when a
// numerator factor reaches zero, i.e. the falling power in the numerator
// vanishes; the caller then reports probability 0.
bool multiply_ratio(long double& acc, std::uint64_t num, std::uint64_t den,
                    std::uint64_t count) {
  if (count > num) return false;
  for (std::uint64_t k = 0; k < count; ++k) {
    acc *= static_cast<long double>(num - k) / static_cast<long double>(den - k);
  }
  return true;
}

void require_profile_sum(std::uint64_t n, const ColorProfile& profile) {
  if (profile.total() != n) {
    throw DomainError("profile sums to " + std::to_string(profile.total()) +
                      ", expected " + std::to_string(n));
  }
}

}  // namespace

BigInt falling_power(std::uint64_t a, std::uint64_t r) {
  if (r > a) return 0;
  BigInt result = 1;
  for (std::uint64_t k = 0; k < r; ++k) result *= (a - k);
  return result;
}

BigInt multinomial(std::uint64_t n, const ColorProfile& profile) {
  require_profile_sum(n, profile);
  // Product of binomials C(remaining, c_i), each computed exactly.
  BigInt result = 1;
  std::uint64_t remaining = n;
  for (std::uint64_t c : profile.counts()) {
    BigInt binom = 1;
    for (std::uint64_t k = 0; k < c; ++k) {
      binom *= (remaining - k);
      binom /= (k + 1);
    }
    result *= binom;
    remaining -= c;
  }
  return result;
}

long double falling_ratio_ld(std::uint64_t a, std::uint64_t c, std::uint64_t r) {
  if (a > c) {
    throw DomainError("falling_ratio requires a <= c (a=" + std::to_string(a) +
                      ", c=" + std::to_string(c) + ")");
  }
  long double acc = 1.0L;
  return multiply_ratio(acc, a, c, r) ? acc : 0.0L;
}

double falling_ratio(std::uint64_t a, std::uint64_t c, std::uint64_t r) {
  return static_cast<double>(falling_ratio_ld(a, c, r));
}

FallingRatioSequence::FallingRatioSequence(std::uint64_t a, std::uint64_t c,
                                           std::uint64_t max_r) {
  if (a > c) {
    throw DomainError("falling ratio table requires a <= c (a=" + std::to_string(a) +
                      ", c=" + std::to_string(c) + ")");
  }
  const std::uint64_t last = std::min(max_r, a);
  values_.resize(last + 1);
  long double acc = 1.0L;
  values_[0] = acc;
  for (std::uint64_t r = 1; r <= last; ++r) {
    acc *= static_cast<long double>(a - (r - 1)) / static_cast<long double>(c - (r - 1));
    values_[r] = acc;
  }
}

double hypergeom_pmf(std::uint64_t n, std::uint64_t c, std::uint64_t t, std::uint64_t h) {
  if (h > t || t > n || c > n) {
    throw DomainError("hypergeom_pmf requires h <= t <= n and c <= n");
  }
  if (h > c || t - h > n - c) return 0.0;
  // C(t, h), then c^{h} / n^{h}, then (n-c)^{t-h} / (n-h)^{t-h}.
  long double binom = 1.0L;
  const std::uint64_t k = std::min(h, t - h);
  for (std::uint64_t i = 0; i < k; ++i) {
    binom = binom * static_cast<long double>(t - i) / static_cast<long double>(i + 1);
  }
  long double ratio = 1.0L;
  multiply_ratio(ratio, c, n, h);
  multiply_ratio(ratio, n - c, n - h, t - h);
  return static_cast<double>(binom * ratio);
}

double log_multinomial(std::uint64_t n, const ColorProfile& profile) {
  require_profile_sum(n, profile);
  long double result = std::lgamma(static_cast<long double>(n) + 1.0L);
  for (std::uint64_t c : profile.counts()) {
    result -= std::lgamma(static_cast<long double>(c) + 1.0L);
  }
  return static_cast<double>(result);
}

double joint_color_prob(std::uint64_t n, std::uint64_t c_i, std::uint64_t c_j,
                        std::uint64_t a, std::uint64_t b, std::uint64_t a2,
                        std::uint64_t b2, std::uint64_t b3) {
  if (c_i + c_j > n) throw DomainError("joint_color_prob requires c_i + c_j <= n");
  if (b3 > b2 || b3 > a) throw DomainError("joint_color_prob requires b3 <= min(b2, a)");
  const std::uint64_t rest = n - c_i;
  long double p = 1.0L;
  // c_i^{a} (n-c_i)^{b} / n^{a+b}
  if (!multiply_ratio(p, c_i, n, a)) return 0.0;
  if (!multiply_ratio(p, rest, n - a, b)) return 0.0;
  // c_j^{a2} (n-c_i-c_j)^{b2-b3} / (n-c_i)^{a2+b2-b3}
  if (!multiply_ratio(p, c_j, rest, a2)) return 0.0;
  if (!multiply_ratio(p, rest - c_j, rest - a2, b2 - b3)) return 0.0;
  return static_cast<double>(p);
}

}  // namespace homophily
