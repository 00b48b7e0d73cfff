#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "laminal/model.hpp"
#include "laminal/partition.hpp"

namespace laminal {

/// Full ancillary taxonomy of a model, optionally restricted to statistics
/// that are functions of `within` (normally the minimal sufficient partition).
/// Every partition is over the sample indices of the model.
struct AncillaryClassification {
  std::vector<Partition> ancillaries;
  std::vector<Partition> maximal;
  std::vector<Partition> minimal;
  Partition laminal = Partition::trivial(1);
  /// Stable ancillaries; always equal to `minimal`.
  std::vector<Partition> stable;
  /// Ancillary events conforming to every ancillary event, as sorted sample sets.
  std::vector<SampleSet> gamma0;
  std::optional<Partition> within;
  bool restricted_to_mss = false;
  /// Number of candidate partitions examined.
  std::size_t enumerated = 0;
};

/// A concrete reweighting that makes an unstable ancillary informative: in
/// the mixture of `via`'s conditional models with `weights`, block `block`
/// of `unstable` has probability `lr.first` under `thetas.first` and
/// `lr.second` under `thetas.second`.
struct InstabilityWitness {
  Partition unstable;
  Partition via;
  Weights weights;
  std::size_t block = 0;
  std::pair<Index, Index> thetas;
  std::pair<Rational, Rational> lr;
};

struct MleResult {
  Index theta = 0;
  /// More than one parameter value attains the maximum; the lowest index won.
  bool tie = false;
};

bool is_ancillary(const FiniteModel& model, const Partition& statistic);
bool is_ancillary_event(const FiniteModel& model, std::span<const Index> event);

/// Computes and caches the ancillary structure of one model over the cells
/// of `within` (or the sample points themselves).
///
/// Stability and strength are decided twice: by the definitional route
/// (U stays ancillary inside every conditional model M|V=i, and every V stays
/// ancillary inside every M|U=j; by linearity of a mixture in its weights
/// these point-mass cases cover every reweighting) and by the structural
/// route (U coarsens every maximal ancillary). Disagreement throws
/// Error(InvariantViolation).
class AncillaryEngine {
 public:
  AncillaryEngine(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                  EnumerationLimits limits = {});
  ~AncillaryEngine();
  AncillaryEngine(AncillaryEngine&&) noexcept;
  AncillaryEngine& operator=(AncillaryEngine&&) noexcept;

  const FiniteModel& model() const;
  const std::optional<Partition>& within() const;

  const std::vector<Partition>& ancillaries();
  const std::vector<Partition>& maximal();
  const std::vector<Partition>& minimal();
  const Partition& laminal();
  std::size_t enumerated();

  bool is_stable(const Partition& statistic);
  bool is_strong(const Partition& statistic);
  std::optional<InstabilityWitness> instability_witness(const Partition& statistic);

  std::vector<SampleSet> ancillary_events();
  std::vector<SampleSet> gamma0();

  AncillaryClassification classify();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// All ancillary partitions (coarsenings of `within` when given), sorted.
/// Throws Error(SizeCapExceeded).
std::vector<Partition> ancillaries(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                                   EnumerationLimits limits = {});
std::vector<Partition> maximal_ancillaries(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                                           EnumerationLimits limits = {});
std::vector<Partition> minimal_ancillaries(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                                           EnumerationLimits limits = {});
/// Join of the maximal ancillaries; checked to be the largest minimal ancillary.
Partition laminal(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                  EnumerationLimits limits = {});

/// Throws Error(NotAncillary) when `statistic` is not ancillary.
bool is_stable(const FiniteModel& model, const Partition& statistic, EnumerationLimits limits = {});
bool is_strong(const FiniteModel& model, const Partition& statistic, EnumerationLimits limits = {});
std::optional<InstabilityWitness> instability_witness(const FiniteModel& model, const Partition& statistic,
                                                      EnumerationLimits limits = {});

/// Every event with theta-free probability, including the empty set and the
/// whole space, ordered by bitmask. Throws Error(SizeCapExceeded) above
/// `limits.event_cap` points.
std::vector<SampleSet> ancillary_events(const FiniteModel& model, EnumerationLimits limits = {});
/// Ancillary events E with E ∩ F ancillary for every ancillary F.
std::vector<SampleSet> gamma0(const FiniteModel& model, EnumerationLimits limits = {});

AncillaryClassification classify(const FiniteModel& model, std::optional<Partition> within = std::nullopt,
                                 EnumerationLimits limits = {});

/// Argmax over theta of P_theta({x}); ties go to the lowest theta index.
MleResult mle(const FiniteModel& model, Index x);

/// Entry (r, c) is P_r(mle(X) = c | X in block `block` of `statistic`).
/// Throws NotAncillary, InvalidIndex or ZeroProbabilityEvent.
Matrix conditional_mle_table(const FiniteModel& model, const Partition& statistic, std::size_t block);

/// The reweighting tried first on four-block ancillaries when searching for
/// an instability witness.
const std::vector<Rational>& default_reweighting();

}  // namespace laminal
