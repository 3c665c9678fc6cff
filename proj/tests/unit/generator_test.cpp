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

#include "homophily/generator.hpp"

#include <gtest/gtest.h>

#include "homophily/error.hpp"

namespace homophily {
namespace {

TEST(RandomColoredGraphTest, ExactEdgeCountAndBalancedColors) {
  for (std::uint64_t m : {0u, 1u, 50u, 400u, 1000u, 1225u}) {
    const auto g = random_colored_graph(50, m, 3, m + 1);
    EXPECT_EQ(g.num_nodes(), 50u);
    EXPECT_EQ(g.num_edges(), m);
    EXPECT_EQ(g.profile(), ColorProfile({17, 17, 16}));
  }
}

TEST(RandomColoredGraphTest, DeterministicInSeed) {
  const auto a = random_colored_graph(100, 300, 4, 5);
  const auto b = random_colored_graph(100, 300, 4, 5);
  const auto c = random_colored_graph(100, 300, 4, 6);
  bool differs = false;
  for (NodeId v = 0; v < 100; ++v) {
    EXPECT_TRUE(std::ranges::equal(a.neighbors(v), b.neighbors(v)));
    EXPECT_EQ(a.color(v), b.color(v));
    differs = differs || !std::ranges::equal(a.neighbors(v), c.neighbors(v));
  }
  EXPECT_TRUE(differs);
}

TEST(RandomColoredGraphTest, DensityVariant) {
  const auto g = random_colored_graph_with_density(201, 0.05, 2, 1);
  EXPECT_EQ(g.num_edges(), 1005u);
  EXPECT_NEAR(g.density(), 0.05, 1e-12);
}

TEST(RandomColoredGraphTest, RejectsImpossibleRequests) {
  EXPECT_THROW(random_colored_graph(10, 46, 2, 1), DomainError);
  EXPECT_THROW(random_colored_graph(3, 1, 4, 1), DomainError);
  EXPECT_THROW(random_colored_graph(3, 1, 0, 1), DomainError);
  EXPECT_THROW(random_colored_graph_with_density(10, 1.5, 2, 1), DomainError);
}

}  // namespace
}  // namespace homophily
