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

// Falling powers and the probabilities of color events under a uniformly
// random coloring with a fixed profile.
//
// Every probability here is a ratio of falling powers. Ratios are evaluated
// as products of per-factor quotients, each in [0, 1], so nothing overflows
// even for exponents in the tens of thousands. Exact big integers are only
// provided for cross-checking.

#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "homophily/graph.hpp"

namespace homophily {

using BigInt = boost::multiprecision::cpp_int;

/// a (a-1) ... (a-r+1); 1 for r = 0 and 0 for r > a.
BigInt falling_power(std::uint64_t a, std::uint64_t r);

/// n! / (c_1! ... c_s!). Throws DomainError if the profile does not sum to n.
BigInt multinomial(std::uint64_t n, const ColorProfile& profile);

/// a^{r falling} / c^{r falling} for a <= c, as the product of (a-k)/(c-k).
/// Returns 0 when r > a. Throws DomainError if a > c.
double falling_ratio(std::uint64_t a, std::uint64_t c, std::uint64_t r);

/// Extended-precision variant used by the moment formulas.
long double falling_ratio_ld(std::uint64_t a, std::uint64_t c, std::uint64_t r);

/// Table of falling_ratio(a, c, r) for r = 0, 1, ..., built by running the
/// same product incrementally. Lookups past `a` return 0.
class FallingRatioSequence {
 public:
  /// Tabulates r in [0, min(max_r, a)]. Throws DomainError if a > c.
  FallingRatioSequence(std::uint64_t a, std::uint64_t c, std::uint64_t max_r);

  long double operator[](std::uint64_t r) const {
    return r < values_.size() ? values_[r] : 0.0L;
  }
  std::uint64_t tabulated() const noexcept { return values_.size(); }

 private:
  std::vector<long double> values_;
};

/// P(h successes in t draws without replacement from n items, c of which are
/// successes) = C(t,h) c^{h} (n-c)^{t-h} / n^{t} (falling powers).
/// Requires h <= t <= n and c <= n.
double hypergeom_pmf(std::uint64_t n, std::uint64_t c, std::uint64_t t, std::uint64_t h);

/// log(n! / (c_1! ... c_s!)) via lgamma. Throws DomainError if the profile
/// does not sum to n.
double log_multinomial(std::uint64_t n, const ColorProfile& profile);

/// Probability that the nodes of a set A (|A| = a) all get color i, a
/// disjoint set B (|B| = b) avoids i, a set A' (|A'| = a2, disjoint from A)
/// all get color j != i, and a set B' (|B'| = b2, disjoint from B and A')
/// avoids j, where b3 = |B' ∩ A|:
///
///   c_i^{a} (n-c_i)^{b} / n^{a+b}
///     * c_j^{a2} (n-c_i-c_j)^{b2-b3} / (n-c_i)^{a2+b2-b3}
///
/// The product is exact when A' is inside B and B' is inside A (so
/// b2 == b3), which covers every event the moment formulas need. Otherwise
/// it ignores that nodes outside A and B may take color i, and is only an
/// approximation. With a2 = b2 = b3 = 0 this is the single-color event
/// probability.
/// Requires b3 <= min(b2, a) and c_i + c_j <= n.
double joint_color_prob(std::uint64_t n, std::uint64_t c_i, std::uint64_t c_j,
                        std::uint64_t a, std::uint64_t b, std::uint64_t a2,
                        std::uint64_t b2, std::uint64_t b3);

}  // namespace homophily
