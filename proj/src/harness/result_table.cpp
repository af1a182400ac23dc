#include "fopim/harness/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#ifndef FOPIM_VERSION
#define FOPIM_VERSION "0.0.0-unknown"
#endif

namespace fopim::harness {

void ResultTable::add(std::string sweep_name, double sweep_value, std::string metric, double estimate, double se,
                      std::uint64_t trials) {
  rows.push_back({std::move(sweep_name), sweep_value, std::move(metric), estimate, se, trials});
}

const ResultRow& ResultTable::find(const std::string& metric, double sweep_value) const {
  for (const auto& r : rows)
    if (r.metric == metric && (r.sweep_value == sweep_value || (std::isnan(r.sweep_value) && std::isnan(sweep_value))))
      return r;
  throw std::out_of_range("no row for metric '" + metric + "'");
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const ResultTable& t, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : t.rows)
    out << r.sweep_name << ',' << format_number(r.sweep_value) << ',' << r.metric << ',' << format_number(r.estimate)
        << ',' << format_number(r.stderr_) << ',' << r.trials << ',' << t.seed << ',' << t.config_hash << '\n';
}

std::string to_csv(const ResultTable& t) {
  std::ostringstream o;
  write_csv(t, o);
  return o.str();
}

void write_json(const ResultTable& t, const ExperimentSpec& spec, std::ostream& out) {
  nlohmann::json j;
  j["version"] = t.version;
  j["seed"] = t.seed;
  j["config_hash"] = t.config_hash;
  j["experiment"] = {{"name", spec.name},
                     {"kind", std::string(kind_name(spec.kind))},
                     {"sweep", spec.sweep_axis},
                     {"values", spec.sweep_values},
                     {"series", spec.series_axis},
                     {"series_values", spec.series_values},
                     {"trials", spec.trials},
                     {"decoders", spec.decoders},
                     {"workers", spec.workers}};
  const auto& c = spec.cfg;
  j["system"] = {{"N", c.N},         {"M", c.M},         {"L", c.L},           {"P", c.P},
                 {"J", c.J},         {"mu", c.pam_mu()}, {"eta", c.pam_eta()}, {"K", c.K},
                 {"delta_f", c.delta_f}, {"f_c", c.f_c}, {"P_S", c.P_S},       {"sigma2", c.sigma2},
                 {"d1", c.d1},       {"d3", c.d3},       {"R_C", c.R_C},       {"theta_C_deg", rad_to_deg(c.theta_C)},
                 {"snr_db", spec.snr_db}};
  j["canonical_config"] = t.canonical_config;
  j["rows"] = t.rows.size();
  out << j.dump(2) << '\n';
}

std::string version_string() { return FOPIM_VERSION; }

}  // namespace fopim::harness
