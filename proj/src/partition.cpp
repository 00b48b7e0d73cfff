#include "laminal/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "laminal/error.hpp"

namespace laminal {

namespace {

std::vector<std::size_t> canonical_rgs(std::span<const std::size_t> label) {
  std::map<std::size_t, std::size_t> renumber;
  std::vector<std::size_t> rgs(label.size());
  for (std::size_t x = 0; x < label.size(); ++x) {
    auto [it, inserted] = renumber.try_emplace(label[x], renumber.size());
    rgs[x] = it->second;
  }
  return rgs;
}

void require_same_ground(const Partition& a, const Partition& b) {
  if (a.ground_size() != b.ground_size()) {
    throw Error(ErrorCode::GroundSetMismatch, "partitions over " + std::to_string(a.ground_size()) + " and " +
                                                  std::to_string(b.ground_size()) + " points");
  }
}

// Union-find with path halving.
struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Partition::Partition(std::vector<std::size_t> rgs) : rgs_(std::move(rgs)) {
  std::size_t count = 0;
  for (auto b : rgs_) count = std::max(count, b + 1);
  blocks_.resize(count);
  for (std::size_t x = 0; x < rgs_.size(); ++x) blocks_[rgs_[x]].push_back(x);
}

Partition Partition::from_labels(std::span<const std::size_t> label) { return Partition(canonical_rgs(label)); }

Partition Partition::from_blocks(std::size_t n, std::vector<SampleSet> blocks) {
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(n, unset);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw Error(ErrorCode::GroundSetMismatch, "empty block");
    for (Index x : blocks[b]) {
      if (x >= n) throw Error(ErrorCode::GroundSetMismatch, "element " + std::to_string(x) + " outside ground set");
      if (label[x] != unset) throw Error(ErrorCode::GroundSetMismatch, "element " + std::to_string(x) + " repeated");
      label[x] = b;
    }
  }
  if (std::find(label.begin(), label.end(), unset) != label.end()) {
    throw Error(ErrorCode::GroundSetMismatch, "blocks do not cover the ground set");
  }
  return from_labels(label);
}

Partition Partition::discrete(std::size_t n) {
  std::vector<std::size_t> rgs(n);
  std::iota(rgs.begin(), rgs.end(), 0);
  return Partition(std::move(rgs));
}

Partition Partition::trivial(std::size_t n) { return Partition(std::vector<std::size_t>(n, 0)); }

Partition Partition::parse(std::string_view text, const std::vector<std::string>& labels) {
  std::vector<SampleSet> blocks;
  std::string s(text);
  std::stringstream blocks_in(s);
  std::string block_text;
  while (std::getline(blocks_in, block_text, '|')) {
    SampleSet block;
    std::stringstream items(block_text);
    std::string item;
    while (std::getline(items, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (item.empty()) throw Error(ErrorCode::ParseError, "empty label in partition '" + s + "'");
      auto it = std::find(labels.begin(), labels.end(), item);
      if (it == labels.end()) throw Error(ErrorCode::UnknownSampleLabel, item);
      block.push_back(static_cast<Index>(it - labels.begin()));
    }
    blocks.push_back(std::move(block));
  }
  return from_blocks(labels.size(), std::move(blocks));
}

std::string Partition::str(const std::vector<std::string>& labels) const {
  std::string out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += '|';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i) out += ',';
      out += labels[blocks_[b][i]];
    }
  }
  return out;
}

std::string Partition::str() const {
  std::vector<std::string> labels(ground_size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = std::to_string(i + 1);
  return str(labels);
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (auto c = a.ground_size() <=> b.ground_size(); c != 0) return c;
  return a.blocks_ <=> b.blocks_;
}

bool is_coarsening(const Partition& coarse, const Partition& fine) {
  require_same_ground(coarse, fine);
  for (const auto& block : fine.blocks()) {
    const std::size_t target = coarse.block_of(block.front());
    for (Index x : block) {
      if (coarse.block_of(x) != target) return false;
    }
  }
  return true;
}

Partition join(std::span<const Partition> parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyInput, "join of no partitions");
  const std::size_t n = parts.front().ground_size();
  DisjointSets sets(n);
  for (const auto& p : parts) {
    require_same_ground(parts.front(), p);
    for (const auto& block : p.blocks()) {
      for (Index x : block) sets.unite(block.front(), x);
    }
  }
  std::vector<std::size_t> label(n);
  for (std::size_t x = 0; x < n; ++x) label[x] = sets.find(x);
  return Partition::from_labels(label);
}

Partition join(const Partition& a, const Partition& b) {
  const Partition parts[] = {a, b};
  return join(parts);
}

Partition meet(const Partition& a, const Partition& b) {
  require_same_ground(a, b);
  const std::size_t n = a.ground_size();
  std::vector<std::size_t> label(n);
  for (std::size_t x = 0; x < n; ++x) label[x] = a.block_of(x) * n + b.block_of(x);
  return Partition::from_labels(label);
}

Partition lift(const Partition& over_blocks, const Partition& base) {
  if (over_blocks.ground_size() != base.size()) {
    throw Error(ErrorCode::GroundSetMismatch, "partition of " + std::to_string(over_blocks.ground_size()) +
                                                  " cells lifted through " + std::to_string(base.size()) + " blocks");
  }
  std::vector<std::size_t> label(base.ground_size());
  for (std::size_t x = 0; x < label.size(); ++x) label[x] = over_blocks.block_of(base.block_of(x));
  return Partition::from_labels(label);
}

PartitionStream::PartitionStream(std::size_t n, std::optional<Partition> coarser_than, EnumerationLimits limits)
    : n_(n), base_(std::move(coarser_than)) {
  if (n == 0) throw Error(ErrorCode::GroundSetMismatch, "cannot enumerate partitions of an empty set");
  if (base_ && base_->ground_size() != n) {
    throw Error(ErrorCode::GroundSetMismatch, "coarser_than has ground size " + std::to_string(base_->ground_size()));
  }
  const std::size_t cells = base_ ? base_->size() : n;
  if (cells > limits.partition_cap) {
    throw Error(ErrorCode::SizeCapExceeded, "enumerating partitions of " + std::to_string(cells) +
                                                " cells exceeds the cap of " + std::to_string(limits.partition_cap));
  }
  rgs_.assign(cells, 0);
  prefix_max_.assign(cells, 0);
}

bool PartitionStream::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  // Rightmost position that may still grow: rgs[i] <= max(rgs[0..i-1]).
  std::size_t i = rgs_.size();
  while (i > 1 && rgs_[i - 1] > prefix_max_[i - 2]) --i;
  if (i <= 1) {
    done_ = true;
    return false;
  }
  --i;
  ++rgs_[i];
  prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
  for (std::size_t j = i + 1; j < rgs_.size(); ++j) {
    rgs_[j] = 0;
    prefix_max_[j] = prefix_max_[i];
  }
  return true;
}

std::optional<Partition> PartitionStream::next() {
  if (!advance()) return std::nullopt;
  if (!base_) return Partition::from_labels(rgs_);
  std::vector<std::size_t> label(n_);
  for (std::size_t x = 0; x < n_; ++x) label[x] = rgs_[base_->block_of(x)];
  return Partition::from_labels(label);
}

std::vector<Partition> enumerate_partitions(std::size_t n, std::optional<Partition> coarser_than,
                                            EnumerationLimits limits) {
  PartitionStream stream(n, std::move(coarser_than), limits);
  std::vector<Partition> out;
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

}  // namespace laminal
