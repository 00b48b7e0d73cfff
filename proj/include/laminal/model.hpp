#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "laminal/rational.hpp"

namespace laminal {

using Index = std::size_t;
using SampleSet = std::vector<Index>;
using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

/// A finite discrete statistical model: rows indexed by parameter values,
/// columns by sample points, entries P_theta({x}).
///
/// Invariants, checked on construction:
///   - at least one parameter value and one sample point, unique labels
///   - every entry >= 0 and every row sums to exactly 1
///   - every column is positive under some parameter value
class FiniteModel {
 public:
  /// Throws Error with DimensionMismatch, DuplicateLabel, NegativeProbability,
  /// RowSumError or DeadSamplePoint.
  FiniteModel(std::vector<std::string> theta_labels, std::vector<std::string> sample_labels, Matrix probs,
              std::string name = "model");

  const std::string& name() const { return name_; }
  const std::vector<std::string>& thetas() const { return thetas_; }
  const std::vector<std::string>& samples() const { return samples_; }
  const Matrix& probs() const { return probs_; }

  std::size_t theta_count() const { return thetas_.size(); }
  std::size_t sample_count() const { return samples_.size(); }
  const Rational& prob(Index theta, Index sample) const { return probs_[theta][sample]; }
  const Row& row(Index theta) const { return probs_[theta]; }
  Row column(Index sample) const;

  /// P_theta(event). Indices must be valid.
  Rational event_probability(Index theta, std::span<const Index> event) const;

  /// Index of a sample label; throws Error(UnknownSampleLabel).
  Index sample_index(const std::string& label) const;

  /// Labels of sample points removed while deriving this model (zero columns
  /// after conditioning or reweighting). Provenance only.
  const std::vector<std::string>& dropped() const { return dropped_; }

  FiniteModel with_name(std::string name) const;
  FiniteModel with_dropped(std::vector<std::string> dropped) const;

  /// Equality ignores name and provenance.
  friend bool operator==(const FiniteModel& a, const FiniteModel& b) {
    return a.thetas_ == b.thetas_ && a.samples_ == b.samples_ && a.probs_ == b.probs_;
  }

 private:
  std::string name_;
  std::vector<std::string> thetas_;
  std::vector<std::string> samples_;
  Matrix probs_;
  std::vector<std::string> dropped_;
};

/// An inference base (model, observed sample point).
struct InferenceBase {
  FiniteModel model;
  Index observed;

  /// Throws Error(InvalidIndex) when `observed` is not a column of `model`.
  InferenceBase(FiniteModel model, Index observed);

  const std::string& observed_label() const { return model.samples()[observed]; }
  friend bool operator==(const InferenceBase&, const InferenceBase&) = default;
};

/// A probability vector over the blocks of some partition.
class Weights {
 public:
  /// Throws Error(InvalidWeights) unless all entries are >= 0 and sum to 1.
  explicit Weights(std::vector<Rational> values);
  const std::vector<Rational>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<Rational> values_;
};

FiniteModel build_model(std::vector<std::string> theta_labels, std::vector<std::string> sample_labels, Matrix probs);

/// Model text format:
///   model <name>
///   thetas <label> ...
///   samples <label> ...
///   <theta-label> <q1> ... <qn>     (one line per theta)
/// '#' starts a comment. Throws Error(ParseError) or a model invariant error.
FiniteModel parse_model(std::string_view text);
FiniteModel load_model(const std::string& path);
std::string serialize_model(const FiniteModel& model);

/// 64-bit FNV-1a of the serialized model plus observed label, as 16 hex digits.
std::string content_hash(const InferenceBase& ib);

/// Model conditioned on `event`, each row renormalized by its own
/// P_theta(event). Points of the event with zero probability under every
/// theta are dropped. Throws ZeroProbabilityEvent if some theta gives the
/// event probability 0.
FiniteModel condition_on_event(const FiniteModel& model, std::span<const Index> event);

class Partition;

/// P'_theta({x}) = p[U(x)] * P_theta({x}) / P_U(U(x)). Columns left with zero
/// probability are dropped. Throws NotAncillary, WeightArityMismatch or
/// GroundSetMismatch.
FiniteModel mixture_model(const FiniteModel& model, const Partition& ancillary, const Weights& weights);

/// The theta-free block probabilities of an ancillary partition.
/// Throws NotAncillary.
std::vector<Rational> ancillary_distribution(const FiniteModel& model, const Partition& ancillary);

namespace detail {

/// A derived model together with, for each of its columns, the column index
/// it came from in the parent model.
struct DerivedModel {
  FiniteModel model;
  std::vector<Index> origin;
};

DerivedModel condition_tracked(const FiniteModel& model, std::span<const Index> event);
DerivedModel mixture_tracked(const FiniteModel& model, const Partition& ancillary, const Weights& weights);

}  // namespace detail

}  // namespace laminal
