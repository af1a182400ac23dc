#include "fopim/harness/presets.hpp"

#include <map>

namespace fopim::harness {
namespace {

const std::map<std::string, std::string, std::less<>>& table() {
  static const std::map<std::string, std::string, std::less<>> t{
      {"fig3b", R"([experiment]
name = fig3b
kind = ber_sweep
sweep = snr_db
values = 0:2:20
decoders = mltsd,ml
seed = 1

[system]
N = 6
P = 7
J = 4
L = 3
)"},
      {"fig4", R"([experiment]
name = fig4
kind = ber_sweep
sweep = snr_db
values = 0:2:20
series = N
series_values = 4,5,6
decoders = mltsd
seed = 1

[system]
P = 7
J = 4
L = 3
)"},
      {"fig5", R"([experiment]
name = fig5
kind = ber_sweep
sweep = snr_db
values = 0:2:20
series = P
series_values = 5,6,7,8
decoders = mltsd
seed = 1

[system]
N = 4
J = 4
L = 3
)"},
      {"fig6a", R"([experiment]
name = fig6a
kind = rate_table
sweep = P
values = 7:1:16
seed = 1

[system]
N = 6
J = 4
)"},
      {"fig6b", R"([experiment]
name = fig6b
kind = rate_table
sweep = N
values = 2:1:10
pool_excess = 1
seed = 1

[system]
J = 4
)"},
      {"fig7", R"([experiment]
name = fig7
kind = rmse_vs_snapshots
sweep = K
values = 50,100,200,300,400,500
series = delta_f
series_values = 2e6,4e6,6e6
trials = 400
seed = 1

[system]
N = 6
M = 6
P = 7
snr_db = 0
)"},
      {"fig8", R"([experiment]
name = fig8
kind = rmse_vs_snr
sweep = snr_db
values = -10:5:20
series = delta_f
series_values = 2e6,4e6,6e6
trials = 400
seed = 1

[system]
N = 6
M = 6
P = 7
K = 200
)"},
      {"fig9", R"([experiment]
name = fig9
kind = rmse_vs_snr
sweep = snr_db
values = -10:5:20
series = N
series_values = 4,6,8
m_equals_n = true
trials = 400
seed = 1

[system]
P = 9
K = 200
delta_f = 2e6
)"},
      {"fig10", R"([experiment]
name = fig10
kind = rmse_vs_snr
sweep = snr_db
values = -10:5:20
series = P
series_values = 7,9,11
trials = 400
seed = 1

[system]
N = 6
M = 6
K = 200
delta_f = 2e6
)"},
  };
  return t;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : table()) out.push_back(k);
  return out;
}

std::string preset_text(std::string_view name) {
  const auto it = table().find(name);
  if (it == table().end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return it->second;
}

ExperimentSpec preset(std::string_view name) { return parse_spec_string(preset_text(name)); }

}  // namespace fopim::harness
