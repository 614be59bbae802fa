#include "dqm/series_json.hpp"

#include "dqm/error.hpp"

namespace dqm {

using nlohmann::json;

json bpoly_to_json(const BPoly& p) {
  json terms = json::array();
  for (const auto& m : p.monomials()) terms.push_back({unsigned(m.c), m.e_t, m.e_theta});
  return terms;
}

BPoly bpoly_from_json(const Field& f, const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "polynomial must be a list of [c, e_t, e_theta]");
  std::vector<Monom> ms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw Error(ErrorCode::InvalidArgument, "malformed monomial");
    unsigned c = t[0].get<unsigned>();
    if (c >= f.q()) throw Error(ErrorCode::InvalidArgument, "coefficient code out of range");
    ms.push_back({FqCode(c), t[1].get<std::size_t>(), t[2].get<std::size_t>()});
  }
  return BPoly::from_monomials(f, ms);
}

json series_to_json(const USeries& s) {
  json coeffs = json::array();
  for (std::size_t n = 0; n < s.precision(); ++n) {
    const BPoly& c = s.coeff(n);
    if (c.is_zero()) continue;
    coeffs.push_back({n, bpoly_to_json(c)});
  }
  return json{{"q", s.field().q()}, {"prec", s.precision()}, {"var", "u"}, {"coeffs", coeffs}};
}

USeries series_from_json(const json& j) {
  try {
    if (j.at("var").get<std::string>() != "u") throw Error(ErrorCode::DomainMismatch, "series variable must be u");
    const Field& f = Field::get(j.at("q").get<unsigned>());
    std::size_t prec = j.at("prec").get<std::size_t>();
    USeries s(f, prec);
    for (const auto& row : j.at("coeffs")) {
      std::size_t n = row.at(0).get<std::size_t>();
      if (n >= prec) throw Error(ErrorCode::InvalidIndex, "coefficient index beyond precision");
      s.set_coeff(n, bpoly_from_json(f, row.at(1)));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed series JSON: ") + e.what());
  }
}

std::string series_to_canonical(const USeries& s) { return series_to_json(s).dump(); }

}  // namespace dqm
