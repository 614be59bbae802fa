#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dqm/graded.hpp"

namespace dqm {

struct SuiteConfig {
  unsigned q = 2;
  std::size_t N = 200;
  long mu_max = 40;
  long nu_max = 3;
  unsigned k_max = 3;
  std::uint64_t seed = 1;
  long samples = 500;  // random elements per cell where applicable
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  long checked = 0;
  long violations = 0;
  nlohmann::json counterexample;  // first violation, null when none
  nlohmann::json details = nlohmann::json::object();
  nlohmann::json to_json() const;
};

/// anchors, cross, tau-eq, deg-bounds, dims, mdag, riemannroch, epsilon,
/// nu-bounds, siegel, resultant, theorem
const std::vector<std::string>& suite_names();
/// InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

/// Base-form anchors at precision N.
SuiteResult suite_anchors(const SuiteConfig& cfg);
/// ε(𝑬) = E.
SuiteResult suite_cross(const SuiteConfig& cfg);
/// τ-difference residuals and two-route identities.
SuiteResult suite_tau_eq(const SuiteConfig& cfg);
/// deg_t c_n(𝑬) ≤ log_q n, (t−θ) | c_i(𝒅) and deg_t c_i(𝒅) ≤ 1 + ⌊log_{q²} i⌋.
/// The literal log_{q²} i bound is counted in details.literal_d_violations.
SuiteResult suite_deg_bounds(const SuiteConfig& cfg);
SuiteResult suite_dims(const SuiteConfig& cfg);
SuiteResult suite_mdag(const SuiteConfig& cfg);
SuiteResult suite_riemannroch(const SuiteConfig& cfg);
SuiteResult suite_epsilon(const SuiteConfig& cfg);
SuiteResult suite_nu_bounds(const SuiteConfig& cfg);
SuiteResult suite_siegel(const SuiteConfig& cfg);
SuiteResult suite_resultant(const SuiteConfig& cfg);
SuiteResult suite_theorem(const SuiteConfig& cfg);

/// {"q", "terms":[{"mono":[a,b,c,e], "coeff":[[c,e_t,e_θ],...]}], "den":[[j,n],...]}
nlohmann::json element_to_json(const GradedElement& e);
GradedElement element_from_json(const nlohmann::json& j);

}  // namespace dqm
