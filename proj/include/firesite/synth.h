// Copyright 2026 The Firesite Authors
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

#ifndef FIRESITE_SYNTH_H_
#define FIRESITE_SYNTH_H_

#include <cstddef>
#include <cstdint>

#include "firesite/instance.h"

namespace firesite {

// Desk-scale stand-in for a real district: communities scattered over a
// rectangle, risk concentrated around a few hotspots, a jittered grid of
// roads and evenly spread existing stations.
struct SynthParams {
  std::size_t communities = 30;
  std::size_t existing_stations = 1;
  double width = 5.0;   // km
  double height = 4.5;  // km
  double grid_spacing = 0.6;  // km between road grid nodes
  std::size_t hotspots = 3;
  double hotspot_sigma = 1.2;  // km
  double risk_clustering = 0.3;  // weight of hotspot intensity in community attributes, rest uniform
  std::size_t incidents = 200;
  std::size_t macro_candidates = 40;  // upper bound after the annulus filter
  std::size_t micro_candidates = 60;
  double candidate_spacing_m = 200.0;
  double candidate_clearance_m = 50.0;
  std::uint64_t seed = 1;

  // Oracle-sized preset: |J1| <= 15 and |J2| <= 12.
  static SynthParams Tiny(std::uint64_t seed);
  double area() const { return width * height; }
};

InstanceFile GenerateSynthetic(const SynthParams& params);

}  // namespace firesite

#endif  // FIRESITE_SYNTH_H_
