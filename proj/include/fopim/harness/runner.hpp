#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "fopim/harness/experiment_spec.hpp"
#include "fopim/harness/result_table.hpp"

namespace fopim::harness {

/// splitmix64 finaliser of (seed, point, trial); the per-trial engine seed.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t trial);
Rng substream(std::uint64_t seed, std::uint64_t point, std::uint64_t trial);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Each index runs exactly once;
/// callers write into per-index slots so results do not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

ResultTable run_ber_experiment(const ExperimentSpec& spec);
ResultTable run_bound_validation(const ExperimentSpec& spec);
ResultTable run_rmse_experiment(const ExperimentSpec& spec);
ResultTable run_rate_table(const ExperimentSpec& spec);
/// Mean CRBs over `trials` random scenarios at each point of an rmse-style spec.
ResultTable run_crb_table(const ExperimentSpec& spec);
/// Dispatch on spec.kind.
ResultTable run_experiment(const ExperimentSpec& spec);

}  // namespace fopim::harness
