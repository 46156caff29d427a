#include "bell/matching.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "bell/errors.hpp"
#include "bell/feasibility.hpp"

namespace bell {

namespace {

const SpinStream* side_with(const PairRun& run, Label label) {
  if (run.left.label() == label) return &run.left;
  if (run.right.label() == label) return &run.right;
  return nullptr;
}

const SpinStream& partner_of(const PairRun& run, Label label) {
  return run.left.label() == label ? run.right : run.left;
}

// Streams aligned row-by-row plus, per input run, the source index of each row.
struct Bundle {
  std::vector<SpinStream> streams;
  std::vector<std::vector<std::size_t>> row_sources;
  std::vector<std::size_t> input_sizes;

  const SpinStream* find(Label label) const {
    for (const auto& s : streams) {
      if (s.label() == label) return &s;
    }
    return nullptr;
  }
};

Bundle bundle_of(const PairRun& run) {
  std::vector<std::size_t> identity(run.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  return {{run.left, run.right}, {std::move(identity)}, {run.size()}};
}

// Appends `other`'s partner stream to `ref`, reordered on `key`. Returns
// nullopt when nothing matches.
std::optional<Bundle> extend(const Bundle& ref, const PairRun& other, Label key) {
  const SpinStream* ref_key = ref.find(key);
  const SpinStream* other_key = side_with(other, key);
  if (ref_key == nullptr || other_key == nullptr) {
    throw InvalidArgument("shared label " + std::string(to_string(key)) + " not present in both runs");
  }
  if (!same_angle(ref_key->angle(), other_key->angle())) {
    throw AngleMismatch("angle mismatch on shared label " + std::string(to_string(key)));
  }
  const SpinStream& partner = partner_of(other, key);
  if (ref.find(partner.label()) != nullptr) {
    throw InvalidArgument("label " + std::string(to_string(partner.label())) +
                          " already present in the reference");
  }

  const auto pairs = greedy_fifo_pairs(ref_key->outcomes(), other_key->outcomes());
  if (pairs.empty()) return std::nullopt;

  std::vector<std::size_t> ref_rows(pairs.size());
  std::vector<std::size_t> other_rows(pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    ref_rows[r] = pairs[r].first;
    other_rows[r] = pairs[r].second;
  }

  Bundle out;
  for (const auto& s : ref.streams) out.streams.push_back(s.gather(ref_rows));
  out.streams.push_back(partner.gather(other_rows));
  for (const auto& sources : ref.row_sources) {
    std::vector<std::size_t> chained(ref_rows.size());
    for (std::size_t r = 0; r < ref_rows.size(); ++r) chained[r] = sources[ref_rows[r]];
    out.row_sources.push_back(std::move(chained));
  }
  out.row_sources.push_back(std::move(other_rows));
  out.input_sizes = ref.input_sizes;
  out.input_sizes.push_back(other.size());
  return out;
}

MatchResult finish(std::optional<Bundle> bundle, std::vector<std::size_t> input_sizes) {
  MatchResult result;
  const auto shortest = *std::min_element(input_sizes.begin(), input_sizes.end());
  if (!bundle) {
    result.dropped_from_each = std::move(input_sizes);
    result.row_sources.assign(result.dropped_from_each.size(), {});
    return result;
  }
  result.retained = bundle->streams.front().size();
  for (auto n : input_sizes) result.dropped_from_each.push_back(n - result.retained);
  result.retention_fraction = static_cast<double>(result.retained) / static_cast<double>(shortest);
  result.row_sources = std::move(bundle->row_sources);
  result.aligned.emplace(std::move(bundle->streams), Provenance::matched_from_runs);
  return result;
}

void require_labels(const PairRun& run, Label left, Label right, const char* name) {
  if (run.left.label() != left || run.right.label() != right) {
    throw InvalidArgument(std::string(name) + " must carry labels (" + std::string(to_string(left)) +
                          ", " + std::string(to_string(right)) + ")");
  }
}

void assert_identity(const MatchResult& result) {
  if (result.degenerate()) return;
  if (!check_identity(*result.aligned).holds) {
    throw std::logic_error("aligned set violates its finite-data identity");
  }
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> greedy_fifo_pairs(
    std::span<const std::int8_t> reference, std::span<const std::int8_t> other) {
  std::vector<std::size_t> plus;
  std::vector<std::size_t> minus;
  for (std::size_t j = 0; j < other.size(); ++j) (other[j] > 0 ? plus : minus).push_back(j);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(std::min(reference.size(), other.size()));
  std::size_t next_plus = 0;
  std::size_t next_minus = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] > 0) {
      if (next_plus < plus.size()) pairs.emplace_back(i, plus[next_plus++]);
    } else if (next_minus < minus.size()) {
      pairs.emplace_back(i, minus[next_minus++]);
    }
  }
  return pairs;
}

MatchResult match_on_label(const PairRun& reference, const PairRun& other, Label shared_label) {
  if (side_with(reference, shared_label) == nullptr || side_with(other, shared_label) == nullptr) {
    throw InvalidArgument("label " + std::string(to_string(shared_label)) + " not present in both runs");
  }
  return finish(extend(bundle_of(reference), other, shared_label), {reference.size(), other.size()});
}

MatchResult build_triple(const PairRun& run_ab, const PairRun& run_abp) {
  require_labels(run_ab, Label::a, Label::b, "run_ab");
  require_labels(run_abp, Label::a, Label::b_prime, "run_abp");
  auto result = match_on_label(run_ab, run_abp, Label::a);
  assert_identity(result);
  return result;
}

MatchResult build_quadruple(const PairRun& run_ab, const PairRun& run_abp, const PairRun& run_apb,
                            MatchOrder order) {
  require_labels(run_ab, Label::a, Label::b, "run_ab");
  require_labels(run_abp, Label::a, Label::b_prime, "run_abp");
  require_labels(run_apb, Label::a_prime, Label::b, "run_apb");

  const PairRun& first = order == MatchOrder::a_then_b ? run_abp : run_apb;
  const PairRun& second = order == MatchOrder::a_then_b ? run_apb : run_abp;
  const Label first_key = order == MatchOrder::a_then_b ? Label::a : Label::b;
  const Label second_key = order == MatchOrder::a_then_b ? Label::b : Label::a;

  std::optional<Bundle> bundle = extend(bundle_of(run_ab), first, first_key);
  if (bundle) bundle = extend(*bundle, second, second_key);

  // row_sources are reported in argument order (ab, ab', a'b) regardless of order.
  if (bundle && order == MatchOrder::b_then_a) std::swap(bundle->row_sources[1], bundle->row_sources[2]);
  auto result = finish(std::move(bundle), {run_ab.size(), run_abp.size(), run_apb.size()});
  assert_identity(result);
  return result;
}

OverdeterminationReport overdetermination_report(const MatchResult& quad, const PairRun& run_apbp) {
  if (quad.degenerate() || quad.aligned->arity() != 4) {
    throw InvalidArgument("overdetermination report needs a non-degenerate quadruple");
  }
  require_labels(run_apbp, Label::a_prime, Label::b_prime, "run_apbp");
  const auto& set = *quad.aligned;
  const auto& a = set.stream(Label::a);
  const auto& ap = set.stream(Label::a_prime);
  const auto& b = set.stream(Label::b);
  const auto& bp = set.stream(Label::b_prime);
  if (!same_angle(ap.angle(), run_apbp.left.angle()) || !same_angle(bp.angle(), run_apbp.right.angle())) {
    throw AngleMismatch("separate (a', b') run angles differ from the matched quadruple");
  }

  OverdeterminationReport report;
  report.ab = correlation(a, b);
  report.abp = correlation(a, bp);
  report.apb = correlation(ap, b);
  report.induced_apbp = correlation(ap, bp);
  report.direct_apbp = correlation(run_apbp.left, run_apbp.right);
  report.difference = report.induced_apbp.value - report.direct_apbp.value;
  report.with_induced =
      eval_inequality4(report.ab.value, report.abp.value, report.apb.value, report.induced_apbp.value);
  report.with_direct =
      eval_inequality4(report.ab.value, report.abp.value, report.apb.value, report.direct_apbp.value);
  report.direct_realizable =
      report.with_direct.satisfied &&
      feasible_quadruple(CorrelationPoint::quadruple(report.ab.value, report.abp.value, report.apb.value,
                                                     report.direct_apbp.value))
          .feasible;
  report.note = report.direct_realizable
                    ? "direct a'b' substitution is compatible with the matched streams"
                    : "direct a'b' substitution is not realizable by any +-1 data streams";
  return report;
}

}  // namespace bell
