#include "eulersum/json_io.hpp"

#include "eulersum/errors.hpp"

namespace eulersum {

nlohmann::json lincomb_to_json(const LinComb& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [term, c] : x) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : term.factors()) factors.push_back(render_plain(f));
    out.push_back({{"factors", std::move(factors)}, {"coeff", to_string(c)}});
  }
  return out;
}

LinComb lincomb_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected an array of terms", 0);
  LinComb out;
  std::size_t pos = 0;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("factors") || !t.contains("coeff") || !t["factors"].is_array())
      throw ParseError("term needs \"factors\" and \"coeff\"", pos);
    std::vector<MzvAtom> factors;
    for (const auto& f : t["factors"]) {
      if (!f.is_string()) throw ParseError("factor must be a string", pos);
      factors.push_back(parse_atom(f.get<std::string>()));
    }
    Rational c;
    const auto& cj = t["coeff"];
    if (cj.is_string()) c = parse_rational(cj.get<std::string>());
    else if (cj.is_number_integer()) c = Rational(cj.get<long long>());
    else throw ParseError("coeff must be a rational string", pos);
    out.add(SymbolicTerm(std::move(factors)), c);
    ++pos;
  }
  return out;
}

}  // namespace eulersum
