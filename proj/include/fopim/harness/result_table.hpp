#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fopim/harness/experiment_spec.hpp"

namespace fopim::harness {

struct ResultRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string metric;
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t trials = 0;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string version;
  std::string canonical_config;

  void add(std::string sweep_name, double sweep_value, std::string metric, double estimate, double stderr_,
           std::uint64_t trials);
  /// First row matching (metric, sweep_value); throws std::out_of_range.
  const ResultRow& find(const std::string& metric, double sweep_value) const;
};

inline constexpr const char* kCsvHeader = "sweep_name,sweep_value,metric,estimate,stderr,trials,seed,config_hash";

std::string format_number(double v);
void write_csv(const ResultTable& t, std::ostream& out);
std::string to_csv(const ResultTable& t);
/// Provenance sidecar: version, seed, hash, resolved configuration and row count.
void write_json(const ResultTable& t, const ExperimentSpec& spec, std::ostream& out);

/// Version string baked in at build time.
std::string version_string();

}  // namespace fopim::harness
