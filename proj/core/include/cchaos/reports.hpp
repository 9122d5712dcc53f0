#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cchaos/diagnostics.hpp"
#include "cchaos/moments.hpp"
#include "cchaos/multivariate.hpp"
#include "cchaos/ou.hpp"
#include "cchaos/ou_sim.hpp"

namespace cchaos {

/// Complex numbers are written as {"re": x, "im": y}.
nlohmann::json complex_json(cplx z);

nlohmann::json to_json(const MomentReport& r);
nlohmann::json to_json(const BoundInputs& in);
nlohmann::json to_json(const std::vector<ContractionNorm>& table);
nlohmann::json to_json(const LowerTerms& t);
nlohmann::json to_json(const CircularityReport& r);
nlohmann::json to_json(const CltReport& r);
nlohmann::json to_json(const MultivariateReport& r);
nlohmann::json to_json(const RateTable& t);
nlohmann::json to_json(const DenominatorReport& r, bool per_path = false);

/// Univariate bound report: second-order inputs, gap, general and circular
/// upper bounds (an "error" string replaces a value whose preconditions
/// fail), raw lower-bound magnitudes, contraction table and the sandwich
/// constants of the gap.
nlohmann::json univariate_bound_report(const Kernel& f, double circ_tol = 1e-8);

/// T, gap, e3_mixed, e3, be_upper_circular rows, then "#"-prefixed slopes.
std::string rate_table_csv(const RateTable& t);

}  // namespace cchaos
