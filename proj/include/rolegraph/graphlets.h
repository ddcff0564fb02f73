// Copyright 2026 The Rolegraph Authors.
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

// The 30 connected graphlets on 2 to 5 nodes with the orbit of every
// position, in the standard G0..G29 / orbit 0..72 enumeration.

#ifndef ROLEGRAPH_GRAPHLETS_H_
#define ROLEGRAPH_GRAPHLETS_H_

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace rolegraph {

struct GraphletTemplate {
  int id;     // G<id>
  int nodes;  // 2..5
  std::vector<std::pair<int, int>> edges;
  std::vector<int> orbit;  // per position
};

inline const std::vector<GraphletTemplate>& GraphletTemplates() {
  static const std::vector<GraphletTemplate> kTemplates = {
      // Two and three nodes.
      {0, 2, {{0, 1}}, {0, 0}},
      {1, 3, {{0, 1}, {1, 2}}, {1, 2, 1}},
      {2, 3, {{0, 1}, {1, 2}, {0, 2}}, {3, 3, 3}},
      // Four nodes.
      {3, 4, {{0, 1}, {1, 2}, {2, 3}}, {4, 5, 5, 4}},
      {4, 4, {{0, 1}, {0, 2}, {0, 3}}, {7, 6, 6, 6}},
      {5, 4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {8, 8, 8, 8}},
      // Paw: triangle 0,1,2 with pendant 3 on 0.
      {6, 4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}, {11, 10, 10, 9}},
      // Diamond: 0,1 of degree 3.
      {7, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, {13, 13, 12, 12}},
      {8, 4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
       {14, 14, 14, 14}},
      // Five nodes.
      {9, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {15, 16, 17, 16, 15}},
      // Chair: center 0, leaves 1 and 2, arm 0-3-4.
      {10, 5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}}, {21, 19, 19, 20, 18}},
      {11, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {23, 22, 22, 22, 22}},
      // Triangle 0,1,2 with pendants 3 on 0 and 4 on 1.
      {12, 5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}}, {26, 26, 25, 24, 24}},
      // Triangle 0,1,2 with tail 0-3-4.
      {13, 5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}}, {30, 29, 29, 28, 27}},
      // Triangle 0,1,2 with pendants 3 and 4 on 0.
      {14, 5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {0, 4}}, {33, 32, 32, 31, 31}},
      {15, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {34, 34, 34, 34, 34}},
      // Four-cycle 0-1-2-3 with pendant 4 on 0.
      {16, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}}, {38, 37, 36, 37, 35}},
      // Diamond (0,1 of degree 3) with pendant 4 on 0.
      {17, 5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}},
       {42, 41, 40, 40, 39}},
      // Bowtie centered at 0.
      {18, 5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}},
       {44, 43, 43, 43, 43}},
      // Diamond (0,1 of degree 3) with pendant 4 on 2.
      {19, 5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}},
       {48, 48, 47, 46, 45}},
      // K2,3 with parts {0,1} and {2,3,4}.
      {20, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}},
       {50, 50, 49, 49, 49}},
      // House: square 0-1-2-3, roof 4 on 0 and 1.
      {21, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 4}, {1, 4}},
       {53, 53, 51, 51, 52}},
      // Book: edge 0-1 joined to 2, 3 and 4.
      {22, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}},
       {55, 55, 54, 54, 54}},
      // Four-clique 0..3 with pendant 4 on 0.
      {23, 5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}},
       {58, 57, 57, 57, 56}},
      // Gem: 0 joined to the path 1-2-3-4.
      {24, 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3}, {3, 4}},
       {61, 59, 60, 60, 59}},
      // 0 and 1 joined to 2, 3, 4; extra edge 2-3.
      {25, 5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}},
       {63, 63, 64, 64, 62}},
      // Four-clique 0..3 with 4 joined to 0 and 1.
      {26, 5,
       {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 4}},
       {67, 67, 66, 66, 65}},
      // K5 without the matching {1-2, 3-4}.
      {27, 5,
       {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}},
       {69, 68, 68, 68, 68}},
      // K5 without the edge 0-1.
      {28, 5,
       {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4},
        {3, 4}},
       {70, 70, 71, 71, 71}},
      {29, 5,
       {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3},
        {2, 4}, {3, 4}},
       {72, 72, 72, 72, 72}},
  };
  return kTemplates;
}

// Graphlet that owns each orbit.
inline int GraphletOfOrbit(int orbit) {
  for (const auto& t : GraphletTemplates()) {
    for (int o : t.orbit) {
      if (o == orbit) return t.id;
    }
  }
  return -1;
}

}  // namespace rolegraph

#endif  // ROLEGRAPH_GRAPHLETS_H_
