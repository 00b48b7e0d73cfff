#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "laminal/evidence.hpp"
#include "laminal/model.hpp"

namespace laminal {

struct RandomModelOptions {
  std::size_t max_samples = 7;
  std::size_t max_thetas = 3;
  /// Entries are drawn from {0, ..., grid} before normalization.
  std::uint64_t grid = 6;
};

/// A pseudorandom model with small-grid rational entries. About half of the
/// draws plant ancillary structure: either blocks with parameter-free mass,
/// or a 2x2 table with fixed margins (two crossing maximal ancillaries).
/// Parameter labels are theta1, theta2, ...; sample labels 1, 2, ...
FiniteModel random_model(std::mt19937_64& rng, const RandomModelOptions& options = {});

/// `size` pseudorandom models, deterministic in `seed`.
std::vector<FiniteModel> random_models(std::uint64_t seed, std::size_t size, const RandomModelOptions& options = {});

/// `size` pseudorandom inference bases. Besides independent draws the corpus
/// contains derived members related to earlier ones: sample permutations,
/// proportional column splits, other points of the same mss class, and
/// laminal reweightings.
std::vector<InferenceBase> random_corpus(std::uint64_t seed, std::size_t size, const RandomModelOptions& options = {});

/// Random corpus plus every point of the two built-in examples (at
/// eps = 1/100) and of the first example reweighted on its laminal. For the
/// C relation the maximal-ancillary conditionals of the examples' first
/// points are added too.
std::vector<InferenceBase> audit_corpus(std::uint64_t seed, std::size_t size, Relation relation);

}  // namespace laminal
