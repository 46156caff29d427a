#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bell/singlet.hpp"
#include "bell/streams.hpp"

namespace bell {

/// Outcome of reordering one or more runs onto a reference run.
///
/// Row r of the aligned set was assembled from index `row_sources[k][r]` of
/// input run k, so any result can be audited against its inputs.
struct MatchResult {
  std::optional<AlignedSet> aligned;  ///< empty when no pair could be matched
  std::size_t retained = 0;
  std::vector<std::size_t> dropped_from_each;  ///< per input run
  double retention_fraction = 0.0;             ///< retained / min input length
  std::vector<std::vector<std::size_t>> row_sources;

  bool degenerate() const noexcept { return !aligned.has_value(); }
  /// Index map applied to the last reordered run.
  std::span<const std::size_t> permutation() const { return row_sources.back(); }
};

/// Greedy in-order matching on a +-1 key: each reference entry takes the
/// earliest unconsumed other entry with the same value. Returns
/// (reference index, other index) pairs in reference order.
std::vector<std::pair<std::size_t, std::size_t>> greedy_fifo_pairs(
    std::span<const std::int8_t> reference, std::span<const std::int8_t> other);

/// Reorders `other` so its `shared_label` stream equals the reference's one on
/// every retained row. The other run's partner stream is carried along.
MatchResult match_on_label(const PairRun& reference, const PairRun& other, Label shared_label);

/// Runs (a, b) and (a, b') matched on a -> aligned {a, b, b'}.
MatchResult build_triple(const PairRun& run_ab, const PairRun& run_abp);

enum class MatchOrder {
  a_then_b,  ///< (a,b)+(a,b') on a, then +(a',b) on b
  b_then_a,  ///< (a,b)+(a',b) on b, then +(a,b') on a
};

/// Runs (a, b), (a, b'), (a', b) -> aligned {a, a', b, b'}.
MatchResult build_quadruple(const PairRun& run_ab, const PairRun& run_abp, const PairRun& run_apb,
                            MatchOrder order = MatchOrder::a_then_b);

struct OverdeterminationReport {
  CorrelationValue induced_apbp;  ///< from the matched quadruple
  CorrelationValue direct_apbp;   ///< from the separate (a', b') run
  double difference = 0.0;        ///< induced - direct
  CorrelationValue ab, abp, apb;  ///< matched correlations shared by both substitutions
  InequalityEvaluation with_induced;
  InequalityEvaluation with_direct;
  bool direct_realizable = true;  ///< false when no +-1 streams can carry the direct set
  std::string note;
};

OverdeterminationReport overdetermination_report(const MatchResult& quad, const PairRun& run_apbp);

}  // namespace bell
