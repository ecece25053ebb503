#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vg/city_map.hpp"
#include "vg/episode.hpp"
#include "vg/metrics.hpp"
#include "vg/scenario.hpp"

namespace vg {

struct EvalOptions {
  EpisodeConfig base;  // route labels and seed are set per episode
  std::string policy = "pursuit";
  std::string remote_command;  // used when policy == "remote"
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct EvalRun {
  std::vector<EpisodeResult> results;  // route order, then repetition
  MetricsReport metrics;
};

/// Runs every route episodes_per_route times. Episode i (in result order)
/// uses seed + i and a fresh policy instance, so results do not depend on the
/// number of jobs. Pedestrians run only when both the scenario and the base
/// config enable them.
EvalRun evaluate(const CityMap& map, const ScenarioSet& scenario, const EvalOptions& options);

}  // namespace vg
