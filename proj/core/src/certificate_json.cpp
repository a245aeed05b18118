#include "qfsplit/certificate_json.hpp"

namespace qfsplit {

using nlohmann::json;

json polynomials_to_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const Polynomial& p : polys) out.push_back(p.to_string());
  return out;
}

json certificate_to_json(const Certificate& c) {
  struct V {
    json operator()(const NoCertificate&) const { return json::object(); }
    json operator()(const CoefficientWitness& w) const { return {{"level", w.level}, {"value", w.value}}; }
    json operator()(const ChainWitness& w) const { return {{"chain", polynomials_to_json(w.chain)}}; }
    json operator()(const IInftyStabilized& s) const {
      return {{"generators", polynomials_to_json(s.generators)},
              {"iterations", s.iterations},
              {"inside_frobenius_max", s.inside_frobenius_max}};
    }
    json operator()(const NonQfsCertificate& n) const { return {{"test", to_string(n.test)}}; }
    json operator()(const FixedPointEnclosure& e) const { return {{"generators", polynomials_to_json(e.generators)}}; }
  };
  return {{"kind", certificate_kind(c)}, {"data", std::visit(V{}, c)}};
}

json result_to_json(const HeightResult& r, bool include_timing) {
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["verdict"] = to_string(r.verdict);
  if (r.verdict == Verdict::Finite || r.verdict == Verdict::LowerBound) {
    out["n"] = r.n;
  } else {
    out["n"] = nullptr;
  }
  out["route"] = r.route;
  out["certificate"] = certificate_to_json(r.certificate);
  out["steps"] = {{"reductions", r.steps.reductions}, {"pairs", r.steps.pairs}, {"bases", r.steps.bases}};
  if (include_timing) out["wall_time_ms"] = r.wall_time_ms;
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  return out;
}

std::string describe(const HeightResult& r) {
  switch (r.verdict) {
    case Verdict::Finite: return "height " + std::to_string(r.n) + " (" + r.route + ")";
    case Verdict::Infinite: return "not quasi-F-split, height infinite (" + r.route + ")";
    case Verdict::LowerBound: return "height > " + std::to_string(r.n) + " (" + r.route + ")";
    case Verdict::Unknown: return "unknown: " + r.diagnostic;
  }
  return "";
}

}  // namespace qfsplit
