#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "laminal/model.hpp"
#include "laminal/partition.hpp"
#include "laminal/sufficiency.hpp"

namespace laminal {

/// Stable conditionality evidence function: the mss model conditioned on the
/// block of its laminal ancillary that contains T(x), with T(x) observed.
/// The laminal is taken over statistics of the mss, i.e. computed on M_T.
EvidenceBase ev_sc(const InferenceBase& ib, EnumerationLimits limits = {});

/// A relabeling h of mss blocks under which the laminal-contour conditional
/// models and observed blocks coincide; off the contour h pairs the
/// remaining blocks in index order. Requires equally many mss blocks.
/// Throws Error(ThetaSpaceMismatch).
std::optional<Relabeling> sc_equivalent(const InferenceBase& ib1, const InferenceBase& ib2,
                                        EnumerationLimits limits = {});
std::optional<Relabeling> sc_relabeling(const EvidenceBase& e1, const EvidenceBase& e2);

/// Whether `h` witnesses the S relation between the two Ev_MS outputs.
bool is_s_witness(const EvidenceBase& e1, const EvidenceBase& e2, const Relabeling& h);
/// Whether `h` witnesses the SC relation between the two Ev_SC outputs.
bool is_sc_witness(const EvidenceBase& e1, const EvidenceBase& e2, const Relabeling& h);

/// Ev_SC = Ev_MS ∘ Ev_SC = Ev_SC ∘ Ev_MS on this inference base.
bool check_prop6(const InferenceBase& ib, EnumerationLimits limits = {});

/// For an SC-equivalent pair, whether the two conditional inference bases
/// are S-equivalent. Throws Error(NotSCEquivalent) for other pairs.
bool check_prop5(const InferenceBase& ib1, const InferenceBase& ib2, EnumerationLimits limits = {});

enum class Relation { S, SC, C };

std::string relation_name(Relation r);

/// The classical conditionality relation, symmetric form: two bases are
/// related when identical, or when one is the other conditioned on the
/// block containing x of one of its maximal ancillaries.
bool c_related(const InferenceBase& a, const InferenceBase& b, EnumerationLimits limits = {});

/// Conditional inference bases (M|A(x), x) over the maximal ancillaries A.
std::vector<InferenceBase> maximal_conditionals(const InferenceBase& ib, EnumerationLimits limits = {});

struct ContainmentCheck {
  std::size_t first = 0;
  std::size_t second = 0;
  bool in_s = false;
  bool in_sc = false;
};

struct RelationAuditReport {
  Relation relation = Relation::SC;
  std::size_t corpus_size = 0;
  /// content_hash of each corpus member, by corpus index.
  std::vector<std::string> hashes;
  std::vector<std::size_t> reflexive_failures;
  /// (i, j): i ~ j but not j ~ i (or the inverse relabeling does not work).
  std::vector<std::array<std::size_t, 2>> symmetric_failures;
  /// (i, j, k): i ~ j and j ~ k but not i ~ k (or the composed relabeling
  /// does not work).
  std::vector<std::array<std::size_t, 3>> transitive_failures;
  /// Recorded for the SC relation: every ordered pair with its S and SC status.
  std::vector<ContainmentCheck> containment_checks;
  /// Number of related ordered pairs (i != j).
  std::size_t related_pairs = 0;

  bool is_equivalence() const {
    return reflexive_failures.empty() && symmetric_failures.empty() && transitive_failures.empty();
  }
  /// Pairs in S but not in SC.
  std::size_t containment_violations() const;
};

/// Exhaustive reflexivity, symmetry and transitivity check of a relation
/// over the corpus. Pairs with different parameter labels are unrelated.
/// Throws Error(EmptyInput) on an empty corpus.
RelationAuditReport audit_relation(const std::vector<InferenceBase>& corpus, Relation relation,
                                   EnumerationLimits limits = {});

}  // namespace laminal
