#pragma once

#include <optional>
#include <vector>

#include "laminal/model.hpp"
#include "laminal/partition.hpp"

namespace laminal {

/// A bijection between block-index sets: `target[j]` is the block of the
/// first inference base that block j of the second one maps to.
struct Relabeling {
  std::vector<Index> target;

  std::size_t size() const { return target.size(); }
  Index operator()(Index j) const { return target[j]; }
  Relabeling inverse() const;
  /// (this ∘ inner)(j) = this(inner(j)).
  Relabeling compose(const Relabeling& inner) const;
  bool is_identity() const;
  friend bool operator==(const Relabeling&, const Relabeling&) = default;
};

/// Output of an evidence function: a model over minimal-sufficient blocks
/// together with the observed block.
struct EvidenceBase {
  /// Each entry is an mss block, as sample indices of the source model.
  std::vector<SampleSet> space;
  /// Position of each `space` entry in the full mss partition.
  std::vector<Index> mss_index;
  /// Number of blocks of the full mss partition.
  std::size_t mss_size = 0;
  FiniteModel model;
  Index observed_block = 0;
  /// Union of the mss blocks in the conditioning laminal block (sample
  /// indices of the source model); absent for the unconditional function.
  std::optional<SampleSet> conditioning_block;

  InferenceBase as_inference_base() const { return InferenceBase(model, observed_block); }

  /// Equality up to identification of blocks: same model (labels and
  /// probabilities) and same observed position.
  bool same_evidence(const EvidenceBase& other) const {
    return model == other.model && observed_block == other.observed_block;
  }
};

/// Partition into classes of proportional columns (x ~ y iff P_theta({x}) =
/// c P_theta({y}) for all theta). Columns are compared after dividing by
/// their own sum.
Partition mss_partition(const FiniteModel& model);

/// Pushforward model of the statistic with preimage partition `statistic`.
/// Singleton blocks keep their sample label, larger blocks are labelled
/// "[a,b,...]". Throws Error(GroundSetMismatch).
FiniteModel model_of_statistic(const FiniteModel& model, const Partition& statistic);

/// Minimal sufficiency evidence function: (M_T, T(x)).
EvidenceBase ev_ms(const InferenceBase& ib);

/// A relabeling h of mss blocks with M_{1,T1} = M_{2,h(T2)} and
/// h(T2(x2)) = T1(x1), or nullopt. Throws Error(ThetaSpaceMismatch).
std::optional<Relabeling> s_equivalent(const InferenceBase& ib1, const InferenceBase& ib2);

/// Same, on already computed unconditional evidence.
std::optional<Relabeling> s_relabeling(const EvidenceBase& e1, const EvidenceBase& e2);

/// Normalized likelihood vector of each column (column divided by its sum).
std::vector<Row> normalized_columns(const FiniteModel& model);

}  // namespace laminal
