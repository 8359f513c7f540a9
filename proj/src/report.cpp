#include "sepfol/report.hpp"

#include "sepfol/tptp.hpp"

namespace sepfol {

namespace {

Json magnitude(const Magnitude& m) {
  if (!m) return "overflow";
  if (*m <= BigNat(std::numeric_limits<std::uint64_t>::max())) return m->convert_to<std::uint64_t>();
  return m->str();
}

}  // namespace

Json to_json(const FragmentLabel& label) {
  Json j;
  j["labels"] = label.names();
  j["has_equality"] = label.has_equality;
  j["has_nonconstant_functions"] = label.has_nonconstant_functions;
  j["sf_under_alternate_prenexing"] = label.sf_under_alternate_prenexing;
  return j;
}

Json to_json(const Bounds& b) {
  Json j;
  j["regime"] = regime_name(b.regime);
  j["m_dnf"] = b.m_dnf;
  j["m_cnf"] = b.m_cnf;
  j["kappa_cnf"] = magnitude(b.kappa_cnf);
  j["m_star"] = b.m_star;
  j["constants"] = b.constants;
  j["leading"] = b.leading;
  Json blocks = Json::array();
  for (const auto& [k, count] : b.per_block) blocks.push_back({{"block", k}, {"count", magnitude(count)}});
  j["per_block"] = std::move(blocks);
  j["domain_bound"] = magnitude(b.domain_bound);
  return j;
}

Json to_json(const Structure& s) { return Json::parse(print_structure(s)); }

Json to_json(const Verdict& v) {
  Json j;
  j["verdict"] = verdict_name(v);
  if (const auto* sat = std::get_if<Sat>(&v)) {
    j["size"] = sat->size;
    j["model"] = to_json(sat->model);
  } else if (const auto* unsat = std::get_if<Unsat>(&v)) {
    j["bound_checked"] = unsat->bound_checked;
  } else {
    j["reason"] = std::get<Unknown>(v).reason == UnknownReason::BoundOverflow ? "BoundOverflow" : "CapExceeded";
  }
  return j;
}

Json to_json(const ClauseSet& clauses) {
  Json list = Json::array();
  for (const auto& c : clauses.clauses) {
    Json lits = Json::array();
    for (const auto& l : c.literals) lits.push_back(print_tptp(l));
    list.push_back({{"origin", c.origin}, {"literals", std::move(lits)}});
  }
  return list;
}

Json to_json(const std::vector<FingerprintTable>& tables) {
  Json out = Json::array();
  for (const auto& t : tables) {
    Json entries = Json::array();
    for (const auto& [tuple, fp] : t.entries) entries.push_back({{"tuple", tuple}, {"fingerprint", to_string(fp)}});
    out.push_back({{"level", t.level}, {"arity", t.arity}, {"entries", std::move(entries)}});
  }
  return out;
}

}  // namespace sepfol
