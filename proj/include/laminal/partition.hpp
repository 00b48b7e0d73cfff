#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "laminal/model.hpp"

namespace laminal {

/// A set partition of {0, ..., n-1}: the preimage partition of a statistic.
///
/// Canonical form: elements sorted within each block, blocks sorted by their
/// minimum element. Two partitions are equal iff they are the same partition.
class Partition {
 public:
  /// Validates (disjoint, nonempty, covering) and canonicalizes.
  /// Throws Error(GroundSetMismatch) on a malformed block list.
  static Partition from_blocks(std::size_t n, std::vector<SampleSet> blocks);
  /// From any block labelling `label[x]`; labels need not be contiguous.
  static Partition from_labels(std::span<const std::size_t> label);
  static Partition discrete(std::size_t n);
  static Partition trivial(std::size_t n);

  /// Textual form "1,2,3,4|5,6|7" using sample labels.
  /// Throws Error(ParseError) or Error(UnknownSampleLabel).
  static Partition parse(std::string_view text, const std::vector<std::string>& labels);
  std::string str(const std::vector<std::string>& labels) const;
  /// Same with 1-based indices as labels.
  std::string str() const;

  std::size_t ground_size() const { return rgs_.size(); }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<SampleSet>& blocks() const { return blocks_; }
  const SampleSet& block(std::size_t i) const { return blocks_[i]; }
  /// Index of the block containing `x`.
  std::size_t block_of(Index x) const { return rgs_[x]; }
  /// Canonical restricted growth string: rgs()[x] == block_of(x).
  const std::vector<std::size_t>& rgs() const { return rgs_; }

  bool is_trivial() const { return blocks_.size() == 1; }
  bool is_discrete() const { return blocks_.size() == rgs_.size(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.rgs_ == b.rgs_; }
  /// Lexicographic on the canonical block lists (ground size first).
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

 private:
  Partition(std::vector<std::size_t> rgs);
  std::vector<SampleSet> blocks_;
  std::vector<std::size_t> rgs_;
};

/// True iff every block of `fine` lies inside a block of `coarse`, i.e. the
/// statistic of `coarse` is a function of the statistic of `fine`.
/// Throws Error(GroundSetMismatch).
bool is_coarsening(const Partition& coarse, const Partition& fine);

/// Finest common coarsening. Throws GroundSetMismatch or EmptyInput.
Partition join(std::span<const Partition> parts);
Partition join(const Partition& a, const Partition& b);

/// Coarsest common refinement. Throws GroundSetMismatch.
Partition meet(const Partition& a, const Partition& b);

/// Maps a partition of the blocks of `base` back onto the ground set of `base`.
Partition lift(const Partition& over_blocks, const Partition& base);

struct EnumerationLimits {
  /// Largest ground set (or block count under `coarser_than`) whose
  /// partitions will be enumerated. Bell(13) is about 2.7e7.
  std::size_t partition_cap = 13;
  /// Largest sample space for 2^n event scans.
  std::size_t event_cap = 20;
};

/// Streams every set partition of {0..n-1} once, in restricted growth string
/// order (trivial partition first, discrete partition last). With
/// `coarser_than`, only partitions whose blocks are unions of its blocks.
class PartitionStream {
 public:
  /// Throws Error(SizeCapExceeded) when the enumerated set is larger than
  /// `limits.partition_cap`, GroundSetMismatch on a bad `coarser_than`.
  PartitionStream(std::size_t n, std::optional<Partition> coarser_than = std::nullopt,
                  EnumerationLimits limits = {});

  /// The next partition, or nullopt when exhausted.
  std::optional<Partition> next();

  /// Steps to the next restricted growth string without materializing a
  /// Partition; false when exhausted. Mixing with next() is allowed.
  bool advance();
  /// Number of blocks of the current restricted growth string.
  std::size_t cell_block_count() const { return prefix_max_.back() + 1; }

  /// Restricted growth string over the cells (blocks of `coarser_than`, or
  /// single points) of the partition most recently returned.
  const std::vector<std::size_t>& cell_rgs() const { return rgs_; }

 private:
  std::size_t n_;
  std::optional<Partition> base_;
  std::vector<std::size_t> rgs_;
  std::vector<std::size_t> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

/// Convenience: collect the whole stream.
std::vector<Partition> enumerate_partitions(std::size_t n, std::optional<Partition> coarser_than = std::nullopt,
                                            EnumerationLimits limits = {});

}  // namespace laminal
