#pragma once

#include <string>

#include <json.hpp>

#include "dqm/useries.hpp"

namespace dqm {

/// {"q", "prec", "var":"u", "coeffs":[[n, [[c, e_t, e_theta], ...]], ...]},
/// zero coefficients omitted, terms sorted by (e_t, e_theta).
nlohmann::json series_to_json(const USeries& s);
USeries series_from_json(const nlohmann::json& j);
std::string series_to_canonical(const USeries& s);

nlohmann::json bpoly_to_json(const BPoly& p);
BPoly bpoly_from_json(const Field& f, const nlohmann::json& j);

}  // namespace dqm
