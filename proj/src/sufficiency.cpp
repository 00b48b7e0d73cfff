#include "laminal/sufficiency.hpp"

#include <algorithm>
#include <map>

#include "laminal/error.hpp"

namespace laminal {

Relabeling Relabeling::inverse() const {
  Relabeling inv{std::vector<Index>(target.size())};
  for (Index j = 0; j < target.size(); ++j) inv.target[target[j]] = j;
  return inv;
}

Relabeling Relabeling::compose(const Relabeling& inner) const {
  Relabeling out{std::vector<Index>(inner.size())};
  for (Index j = 0; j < inner.size(); ++j) out.target[j] = target[inner.target[j]];
  return out;
}

bool Relabeling::is_identity() const {
  for (Index j = 0; j < target.size(); ++j) {
    if (target[j] != j) return false;
  }
  return true;
}

std::vector<Row> normalized_columns(const FiniteModel& model) {
  std::vector<Row> out;
  out.reserve(model.sample_count());
  for (Index x = 0; x < model.sample_count(); ++x) {
    Row col = model.column(x);
    Rational sum;
    for (const auto& q : col) sum += q;
    for (auto& q : col) q /= sum;
    out.push_back(std::move(col));
  }
  return out;
}

Partition mss_partition(const FiniteModel& model) {
  const auto cols = normalized_columns(model);
  std::map<Row, std::size_t> classes;
  std::vector<std::size_t> label(cols.size());
  for (Index x = 0; x < cols.size(); ++x) {
    label[x] = classes.try_emplace(cols[x], classes.size()).first->second;
  }
  return Partition::from_labels(label);
}

FiniteModel model_of_statistic(const FiniteModel& model, const Partition& statistic) {
  if (statistic.ground_size() != model.sample_count()) {
    throw Error(ErrorCode::GroundSetMismatch, "statistic over " + std::to_string(statistic.ground_size()) +
                                                  " points for a model with " + std::to_string(model.sample_count()));
  }
  std::vector<std::string> labels;
  for (const auto& block : statistic.blocks()) {
    if (block.size() == 1) {
      labels.push_back(model.samples()[block.front()]);
      continue;
    }
    std::string label = "[";
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) label += ',';
      label += model.samples()[block[i]];
    }
    labels.push_back(label + "]");
  }
  Matrix probs(model.theta_count());
  for (Index i = 0; i < model.theta_count(); ++i) {
    for (const auto& block : statistic.blocks()) probs[i].push_back(model.event_probability(i, block));
  }
  return FiniteModel(model.thetas(), std::move(labels), std::move(probs), model.name());
}

EvidenceBase ev_ms(const InferenceBase& ib) {
  const Partition mss = mss_partition(ib.model);
  EvidenceBase e{.space = mss.blocks(),
                 .mss_index = {},
                 .mss_size = mss.size(),
                 .model = model_of_statistic(ib.model, mss),
                 .observed_block = mss.block_of(ib.observed),
                 .conditioning_block = std::nullopt};
  for (Index b = 0; b < mss.size(); ++b) e.mss_index.push_back(b);
  return e;
}

std::optional<Relabeling> s_relabeling(const EvidenceBase& e1, const EvidenceBase& e2) {
  const auto& m1 = e1.model;
  const auto& m2 = e2.model;
  if (m1.thetas() != m2.thetas()) {
    throw Error(ErrorCode::ThetaSpaceMismatch, "parameter labels differ between '" + m1.name() + "' and '" + m2.name() + "'");
  }
  if (m1.sample_count() != m2.sample_count()) return std::nullopt;
  if (m1.column(e1.observed_block) != m2.column(e2.observed_block)) return std::nullopt;

  // Blocks grouped by exact probability vector; match in index order within
  // each group, observed blocks first.
  std::map<Row, std::vector<Index>> free1;
  for (Index t = 0; t < m1.sample_count(); ++t) {
    if (t != e1.observed_block) free1[m1.column(t)].push_back(t);
  }
  Relabeling h{std::vector<Index>(m2.sample_count())};
  h.target[e2.observed_block] = e1.observed_block;
  std::map<Row, std::size_t> used;
  for (Index t = 0; t < m2.sample_count(); ++t) {
    if (t == e2.observed_block) continue;
    const Row col = m2.column(t);
    auto it = free1.find(col);
    std::size_t& k = used[col];
    if (it == free1.end() || k >= it->second.size()) return std::nullopt;
    h.target[t] = it->second[k++];
  }
  return h;
}

std::optional<Relabeling> s_equivalent(const InferenceBase& ib1, const InferenceBase& ib2) {
  if (ib1.model.thetas() != ib2.model.thetas()) {
    throw Error(ErrorCode::ThetaSpaceMismatch,
                "parameter labels differ between '" + ib1.model.name() + "' and '" + ib2.model.name() + "'");
  }
  return s_relabeling(ev_ms(ib1), ev_ms(ib2));
}

}  // namespace laminal
