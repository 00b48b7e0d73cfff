#pragma once

// Brute-force reference computations used to cross-check the library.

#include <functional>
#include <random>
#include <vector>

#include "laminal/model.hpp"
#include "laminal/partition.hpp"

namespace oracle {

using laminal::FiniteModel;
using laminal::Index;
using laminal::Partition;
using laminal::Rational;

// Bell numbers from the Bell triangle.
inline std::vector<unsigned long long> bell_numbers(std::size_t count) {
  std::vector<unsigned long long> out = {1};
  std::vector<unsigned long long> row = {1};
  while (out.size() < count) {
    std::vector<unsigned long long> next = {row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    out.push_back(next.front());
    row = std::move(next);
  }
  return out;
}

// Every set partition of {0..n-1}, by inserting each element into an
// existing block or a new one.
inline std::vector<Partition> all_partitions(std::size_t n) {
  std::vector<std::vector<laminal::SampleSet>> acc = {{}};
  for (Index x = 0; x < n; ++x) {
    std::vector<std::vector<laminal::SampleSet>> next;
    for (const auto& blocks : acc) {
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto copy = blocks;
        copy[b].push_back(x);
        next.push_back(std::move(copy));
      }
      auto copy = blocks;
      copy.push_back({x});
      next.push_back(std::move(copy));
    }
    acc = std::move(next);
  }
  std::vector<Partition> out;
  for (auto& blocks : acc) out.push_back(Partition::from_blocks(n, std::move(blocks)));
  return out;
}

inline Rational block_sum(const FiniteModel& m, Index theta, const laminal::SampleSet& block) {
  Rational s;
  for (Index x : block) s += m.prob(theta, x);
  return s;
}

inline bool ancillary(const FiniteModel& m, const Partition& p) {
  for (const auto& block : p.blocks()) {
    const Rational first = block_sum(m, 0, block);
    for (Index t = 1; t < m.theta_count(); ++t) {
      if (block_sum(m, t, block) != first) return false;
    }
  }
  return true;
}

// Maximal ancillaries straight from the definition: ancillary with no
// strictly finer ancillary.
inline std::vector<Partition> maximal(const FiniteModel& m) {
  const auto parts = all_partitions(m.sample_count());
  std::vector<Partition> anc;
  for (const auto& p : parts) {
    if (ancillary(m, p)) anc.push_back(p);
  }
  std::vector<Partition> out;
  for (const auto& u : anc) {
    bool is_max = true;
    for (const auto& v : anc) {
      if (!(u == v) && laminal::is_coarsening(u, v)) is_max = false;
    }
    if (is_max) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Minimal sufficient partition: x ~ y iff P(x) P'(y) = P(y) P'(x) for every
// pair of parameter values.
inline Partition mss(const FiniteModel& m) {
  const std::size_t n = m.sample_count();
  std::vector<std::size_t> label(n);
  for (Index x = 0; x < n; ++x) {
    label[x] = x;
    for (Index y = 0; y < x; ++y) {
      bool prop = true;
      for (Index s = 0; s < m.theta_count() && prop; ++s) {
        for (Index t = 0; t < m.theta_count() && prop; ++t) {
          prop = m.prob(s, x) * m.prob(t, y) == m.prob(s, y) * m.prob(t, x);
        }
      }
      if (prop) {
        label[x] = label[y];
        break;
      }
    }
  }
  return Partition::from_labels(label);
}

// Random probability vector with entries k/grid-ish, all positive when
// `positive` is set.
inline std::vector<Rational> random_simplex(std::mt19937_64& rng, std::size_t k, bool positive) {
  std::vector<long> w(k);
  long total = 0;
  for (auto& v : w) {
    v = static_cast<long>(rng() % 9) + (positive ? 1 : 0);
    total += v;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (auto v : w) out.emplace_back(v, total);
  return out;
}

}  // namespace oracle
