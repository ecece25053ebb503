#include "vg/eval.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "vg/error.hpp"
#include "vg/policies.hpp"

namespace vg {

EvalRun evaluate(const CityMap& map, const ScenarioSet& scenario, const EvalOptions& options) {
  check_routes(scenario, map);
  const std::size_t reps = static_cast<std::size_t>(scenario.episodes_per_route);
  const std::size_t total = scenario.routes.size() * reps;
  // Fail on a bad policy name before spawning workers.
  if (options.policy != "remote") make_policy(options.policy, options.seed);

  std::vector<EpisodeResult> results(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        EpisodeConfig cfg = options.base;
        const auto& [start, goal] = scenario.routes[i / reps];
        cfg.start_label = start;
        cfg.goal_label = goal;
        cfg.seed = options.seed + i;
        cfg.pedestrians = options.base.pedestrians && scenario.pedestrians;
        auto policy = options.policy == "remote" ? make_remote_policy(options.remote_command)
                                                 : make_policy(options.policy, cfg.seed);
        results[i] = run_episode(*policy, cfg, map);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  EvalRun run;
  run.results = std::move(results);
  run.metrics = aggregate(run.results);
  return run;
}

}  // namespace vg
