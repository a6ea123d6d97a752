// Copyright 2026 The metricvote Authors.
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

#include <limits>
#include <queue>

#include "metricvote/rules.hpp"

namespace metricvote {

std::size_t maximum_matching(std::size_t left, std::size_t right,
                             const std::vector<std::vector<std::size_t>>& adjacency) {
  constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_left(left, kFree), match_right(right, kFree);
  std::vector<std::size_t> dist(left);
  std::size_t matched = 0;

  auto bfs = [&]() {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < left; ++u) {
      if (match_left[u] == kFree) {
        dist[u] = 0;
        queue.push(u);
      } else {
        dist[u] = kUnreached;
      }
    }
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adjacency[u]) {
        std::size_t w = match_right[v];
        if (w == kFree) {
          found = true;
        } else if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  };

  std::vector<std::size_t> next(left);
  // Iterative augmenting-path search along the BFS layers.
  auto augment = [&](std::size_t root) {
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      if (next[u] == adjacency[u].size()) {
        dist[u] = kUnreached;
        stack.pop_back();
        continue;
      }
      std::size_t v = adjacency[u][next[u]];
      std::size_t w = match_right[v];
      if (w == kFree) {
        // Flip the path recorded on the stack.
        for (std::size_t k = stack.size(); k-- > 0;) {
          std::size_t a = stack[k];
          std::size_t b = adjacency[a][next[a]];
          match_left[a] = b;
          match_right[b] = a;
        }
        return true;
      }
      if (dist[w] != kUnreached && dist[w] == dist[u] + 1) {
        stack.push_back(w);
      } else {
        ++next[u];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t u = 0; u < left; ++u) {
      if (match_left[u] == kFree && augment(u)) ++matched;
    }
  }
  return matched;
}

}  // namespace metricvote
