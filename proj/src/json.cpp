#include "bell/json.hpp"

#include <cstdint>
#include <utility>
#include <string>

#include "bell/errors.hpp"

namespace bell {

namespace {

nlohmann::json rationals(const std::vector<Rational>& values) {
  auto out = nlohmann::json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

// a before a' before b before b', so keys read "a'b" rather than "ba'"
std::string pair_name(Label x, Label y) {
  if (y < x) std::swap(x, y);
  return std::string(to_string(x)) + std::string(to_string(y));
}

}  // namespace

void to_json(nlohmann::json& j, const CorrelationValue& v) {
  j = {{"value", v.value}, {"exact_numerator", v.exact_numerator}, {"count", v.count}};
}

void to_json(nlohmann::json& j, const IdentityVerdict& v) {
  j = {{"lhs_numerator", v.lhs_numerator},
       {"rhs_numerator", v.rhs_numerator},
       {"scale", v.scale},
       {"holds", v.holds},
       {"slack_numerator", v.slack_numerator},
       {"slack", v.slack()}};
}

void to_json(nlohmann::json& j, const InequalityEvaluation& v) {
  j = {{"lhs", v.lhs}, {"rhs", v.rhs}, {"satisfied", v.satisfied}, {"slack", v.slack}};
}

void to_json(nlohmann::json& j, const SourceConfig& c) {
  j = {{"n_pairs", c.n_pairs},
       {"theta_left_rad", c.theta_left},
       {"theta_right_rad", c.theta_right},
       {"seed", c.seed},
       {"left_label", std::string(to_string(c.left_label))},
       {"right_label", std::string(to_string(c.right_label))}};
}

void from_json(const nlohmann::json& j, SourceConfig& c) {
  c.n_pairs = j.at("n_pairs").get<std::uint64_t>();
  c.theta_left = j.at("theta_left_rad").get<double>();
  c.theta_right = j.at("theta_right_rad").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.left_label = parse_label(j.at("left_label").get<std::string>());
  c.right_label = parse_label(j.at("right_label").get<std::string>());
}

void to_json(nlohmann::json& j, const CascadeConfig& c) {
  j = {{"n_pairs", c.n_pairs},         {"theta_a_rad", c.theta_a}, {"theta_a_prime_rad", c.theta_a_prime},
       {"theta_b_rad", c.theta_b},     {"theta_b_prime_rad", c.theta_b_prime}, {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, CascadeConfig& c) {
  c.n_pairs = j.at("n_pairs").get<std::uint64_t>();
  c.theta_a = j.at("theta_a_rad").get<double>();
  c.theta_a_prime = j.at("theta_a_prime_rad").get<double>();
  c.theta_b = j.at("theta_b_rad").get<double>();
  c.theta_b_prime = j.at("theta_b_prime_rad").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
}

nlohmann::json match_result_json(const MatchResult& m, bool with_sources) {
  nlohmann::json j = {{"degenerate", m.degenerate()},
                      {"retained", m.retained},
                      {"dropped_from_each", m.dropped_from_each},
                      {"retention_fraction", m.retention_fraction}};
  if (m.aligned) {
    j["provenance"] = std::string(to_string(m.aligned->provenance()));
    auto labels = nlohmann::json::array();
    for (const auto& s : m.aligned->streams()) labels.push_back(std::string(to_string(s.label())));
    j["labels"] = labels;
  }
  if (with_sources) j["row_sources"] = m.row_sources;
  return j;
}

void to_json(nlohmann::json& j, const OverdeterminationReport& r) {
  j = {{"ab", r.ab},
       {"abp", r.abp},
       {"apb", r.apb},
       {"induced_apbp", r.induced_apbp},
       {"direct_apbp", r.direct_apbp},
       {"difference", r.difference},
       {"chsh_with_induced", r.with_induced},
       {"chsh_with_direct", r.with_direct},
       {"direct_realizable", r.direct_realizable},
       {"note", r.note}};
}

void to_json(nlohmann::json& j, const CorrelationReport& r) {
  auto pairs = nlohmann::json::object();
  for (const auto& p : r.pairs) {
    pairs[pair_name(p.x, p.y)] = {{"empirical", p.empirical},
                                  {"predicted", p.predicted},
                                  {"deviation", p.empirical.value - p.predicted}};
  }
  j = {{"correlations", pairs},
       {"identity4", r.identity},
       {"chsh_empirical", r.chsh_empirical},
       {"chsh_predicted", r.chsh_predicted},
       {"prediction_source", r.prediction_source}};
}

void to_json(nlohmann::json& j, const Facet& f) {
  j = {{"coefficients", f.coefficients}, {"bound", f.bound}};
}

void to_json(nlohmann::json& j, const FeasibilityResult& r) {
  j = {{"kind", r.kind == PointKind::triple ? "triple" : "quadruple"},
       {"feasible", r.feasible},
       {"exact", r.exact},
       {"witness", r.witness}};
  if (r.exact) j["exact_witness"] = rationals(r.exact_witness);
  auto facets = nlohmann::json::array();
  for (const auto& v : r.violated_facets) facets.push_back({{"facet", v.facet}, {"slack", v.slack}});
  j["violated_facets"] = facets;
}

void to_json(nlohmann::json& j, const CorrelationBounds& b) {
  j = {{"min", b.min},
       {"max", b.max},
       {"exact", b.exact},
       {"witness_min", b.witness_min},
       {"witness_max", b.witness_max}};
  if (b.exact) {
    j["exact_min"] = to_string(b.exact_min);
    j["exact_max"] = to_string(b.exact_max);
    j["exact_witness_min"] = rationals(b.exact_witness_min);
    j["exact_witness_max"] = rationals(b.exact_witness_max);
  }
}

void to_json(nlohmann::json& j, const ScanSummary& s) {
  j = {{"points", s.points},         {"violations", s.violations},     {"infeasible", s.infeasible},
       {"contradictions", s.contradictions}, {"max_lhs", s.max_lhs},   {"argmax_lhs_row", s.argmax_lhs},
       {"min_slack", s.min_slack},   {"argmin_slack_row", s.argmin_slack}};
}

nlohmann::json aligned_set_report(const AlignedSet& set) {
  nlohmann::json j;
  j["provenance"] = std::string(to_string(set.provenance()));
  j["n"] = set.size();
  auto correlations = nlohmann::json::object();
  const auto& streams = set.streams();
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (std::size_t k = i + 1; k < streams.size(); ++k) {
      correlations[pair_name(streams[i].label(), streams[k].label())] = correlation(streams[i], streams[k]);
    }
  }
  j["correlations"] = correlations;
  const auto verdict = check_identity(set);
  if (set.is_triple()) {
    const auto roles = set.triple_roles();
    j["roles"] = {std::string(to_string(roles.shared->label())), std::string(to_string(roles.partner->label())),
                  std::string(to_string(roles.partner_prime->label()))};
    j["identity3"] = verdict;
    j["inequality3"] = eval_inequality3(correlation(*roles.shared, *roles.partner).value,
                                        correlation(*roles.shared, *roles.partner_prime).value,
                                        correlation(*roles.partner, *roles.partner_prime).value);
  } else {
    const auto& a = set.stream(Label::a);
    const auto& ap = set.stream(Label::a_prime);
    const auto& b = set.stream(Label::b);
    const auto& bp = set.stream(Label::b_prime);
    j["identity4"] = verdict;
    j["inequality4"] = eval_inequality4(correlation(a, b).value, correlation(a, bp).value,
                                        correlation(ap, b).value, correlation(ap, bp).value);
  }
  return j;
}

}  // namespace bell
