#include "gkit/json_io.hpp"

namespace gkit {

Json witt_to_json(const Algebra& q, const std::vector<Elem>& w) {
  Json out = Json::array();
  for (const auto& x : w) out.push_back(q.format(x));
  return out;
}

Json cohen_to_json(const CohenRing& ring, const CohenElem& c) {
  const auto& q = *ring.algebra();
  Json coords = Json::object();
  for (size_t j = 0; j < c.coords.size(); ++j) {
    const uint32_t base = static_cast<uint32_t>(ipow(q.p(), c.n - j));
    for (size_t flat = 0; flat < c.coords[j].size(); ++flat) {
      if (q.is_zero(c.coords[j][flat])) continue;
      std::string key = std::to_string(j);
      for (auto i : unflatten_index(flat, base, q.d())) key += "," + std::to_string(i);
      coords[key] = q.format(c.coords[j][flat]);
    }
  }
  return Json{{"n", c.n}, {"coords", coords}};
}

Json base_to_json(const BaseRing& ring, const BaseElem& a) {
  Json comps = Json::array();
  for (const auto& c : ring.components(a)) comps.push_back(cohen_to_json(ring.cohen(), c));
  return Json{{"components", comps}, {"text", ring.format(a)}};
}

Json error_to_json(const Error& e) {
  Json out{{"error", e.name()}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    out["line"] = pe->line();
    out["column"] = pe->column();
    out["expected"] = pe->expected();
  }
  return out;
}

}  // namespace gkit
