#include "laminal/evidence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "laminal/ancillary.hpp"
#include "laminal/error.hpp"

namespace laminal {

namespace {

void require_same_thetas(const FiniteModel& a, const FiniteModel& b) {
  if (a.thetas() != b.thetas()) {
    throw Error(ErrorCode::ThetaSpaceMismatch, "parameter labels differ between '" + a.name() + "' and '" + b.name() + "'");
  }
}

bool is_bijection(const Relabeling& h, std::size_t size) {
  if (h.size() != size) return false;
  std::vector<bool> hit(size, false);
  for (Index t : h.target) {
    if (t >= size || hit[t]) return false;
    hit[t] = true;
  }
  return true;
}

}  // namespace

EvidenceBase ev_sc(const InferenceBase& ib, EnumerationLimits limits) {
  const Partition mss = mss_partition(ib.model);
  const FiniteModel mss_model = model_of_statistic(ib.model, mss);
  const Partition lam = laminal(mss_model, std::nullopt, limits);
  const Index observed = mss.block_of(ib.observed);
  const SampleSet& contour = lam.block(lam.block_of(observed));
  auto conditional = detail::condition_tracked(mss_model, contour);
  if (conditional.origin.size() != contour.size()) {
    throw Error(ErrorCode::InvariantViolation, "conditioning on the laminal contour dropped an mss block");
  }

  EvidenceBase e{.space = {},
                 .mss_index = conditional.origin,
                 .mss_size = mss.size(),
                 .model = std::move(conditional.model),
                 .observed_block = 0,
                 .conditioning_block = SampleSet{}};
  for (std::size_t c = 0; c < e.mss_index.size(); ++c) {
    const auto& block = mss.block(e.mss_index[c]);
    e.space.push_back(block);
    e.conditioning_block->insert(e.conditioning_block->end(), block.begin(), block.end());
    if (e.mss_index[c] == observed) e.observed_block = c;
  }
  std::sort(e.conditioning_block->begin(), e.conditioning_block->end());
  return e;
}

std::optional<Relabeling> sc_relabeling(const EvidenceBase& e1, const EvidenceBase& e2) {
  require_same_thetas(e1.model, e2.model);
  if (e1.mss_size != e2.mss_size) return std::nullopt;
  // Contour-to-contour matching of the conditional models.
  const auto contour = s_relabeling(e1, e2);
  if (!contour) return std::nullopt;

  Relabeling h{std::vector<Index>(e2.mss_size)};
  std::vector<bool> used1(e1.mss_size, false);
  std::vector<bool> done2(e2.mss_size, false);
  for (std::size_t c = 0; c < contour->size(); ++c) {
    const Index t2 = e2.mss_index[c];
    const Index t1 = e1.mss_index[(*contour)(c)];
    h.target[t2] = t1;
    used1[t1] = true;
    done2[t2] = true;
  }
  Index next1 = 0;
  for (Index t2 = 0; t2 < e2.mss_size; ++t2) {
    if (done2[t2]) continue;
    while (used1[next1]) ++next1;
    h.target[t2] = next1;
    used1[next1] = true;
  }
  return h;
}

std::optional<Relabeling> sc_equivalent(const InferenceBase& ib1, const InferenceBase& ib2, EnumerationLimits limits) {
  require_same_thetas(ib1.model, ib2.model);
  return sc_relabeling(ev_sc(ib1, limits), ev_sc(ib2, limits));
}

bool is_s_witness(const EvidenceBase& e1, const EvidenceBase& e2, const Relabeling& h) {
  if (e1.model.thetas() != e2.model.thetas()) return false;
  if (e1.model.sample_count() != e2.model.sample_count()) return false;
  if (!is_bijection(h, e2.model.sample_count())) return false;
  if (h(e2.observed_block) != e1.observed_block) return false;
  for (Index t = 0; t < e2.model.sample_count(); ++t) {
    if (e2.model.column(t) != e1.model.column(h(t))) return false;
  }
  return true;
}

bool is_sc_witness(const EvidenceBase& e1, const EvidenceBase& e2, const Relabeling& h) {
  if (e1.model.thetas() != e2.model.thetas()) return false;
  if (e1.mss_size != e2.mss_size || !is_bijection(h, e2.mss_size)) return false;
  if (e1.model.sample_count() != e2.model.sample_count()) return false;
  std::map<Index, Index> position1;
  for (std::size_t c = 0; c < e1.mss_index.size(); ++c) position1[e1.mss_index[c]] = c;
  for (std::size_t c = 0; c < e2.mss_index.size(); ++c) {
    auto it = position1.find(h(e2.mss_index[c]));
    if (it == position1.end()) return false;
    if (e2.model.column(c) != e1.model.column(it->second)) return false;
    if ((c == e2.observed_block) != (it->second == e1.observed_block)) return false;
  }
  return true;
}

bool check_prop6(const InferenceBase& ib, EnumerationLimits limits) {
  const EvidenceBase sc = ev_sc(ib, limits);
  const EvidenceBase ms_after_sc = ev_ms(sc.as_inference_base());
  const EvidenceBase sc_after_ms = ev_sc(ev_ms(ib).as_inference_base(), limits);
  return sc.same_evidence(ms_after_sc) && sc.same_evidence(sc_after_ms);
}

bool check_prop5(const InferenceBase& ib1, const InferenceBase& ib2, EnumerationLimits limits) {
  const EvidenceBase e1 = ev_sc(ib1, limits);
  const EvidenceBase e2 = ev_sc(ib2, limits);
  require_same_thetas(e1.model, e2.model);
  if (!sc_relabeling(e1, e2)) {
    throw Error(ErrorCode::NotSCEquivalent, "(" + ib1.model.name() + ", " + ib1.observed_label() + ") and (" +
                                                ib2.model.name() + ", " + ib2.observed_label() + ")");
  }
  return s_equivalent(e1.as_inference_base(), e2.as_inference_base()).has_value();
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::S: return "S";
    case Relation::SC: return "SC";
    case Relation::C: return "C";
  }
  return "?";
}

std::vector<InferenceBase> maximal_conditionals(const InferenceBase& ib, EnumerationLimits limits) {
  std::vector<InferenceBase> out;
  for (const auto& a : maximal_ancillaries(ib.model, std::nullopt, limits)) {
    const auto d = detail::condition_tracked(ib.model, a.block(a.block_of(ib.observed)));
    const auto pos = std::find(d.origin.begin(), d.origin.end(), ib.observed) - d.origin.begin();
    InferenceBase conditional(d.model, static_cast<Index>(pos));
    if (std::find(out.begin(), out.end(), conditional) == out.end()) out.push_back(std::move(conditional));
  }
  return out;
}

bool c_related(const InferenceBase& a, const InferenceBase& b, EnumerationLimits limits) {
  if (a.model.thetas() != b.model.thetas()) return false;
  if (a == b) return true;
  const auto from_a = maximal_conditionals(a, limits);
  if (std::find(from_a.begin(), from_a.end(), b) != from_a.end()) return true;
  const auto from_b = maximal_conditionals(b, limits);
  return std::find(from_b.begin(), from_b.end(), a) != from_b.end();
}

std::size_t RelationAuditReport::containment_violations() const {
  return static_cast<std::size_t>(
      std::count_if(containment_checks.begin(), containment_checks.end(), [](const auto& c) { return c.in_s && !c.in_sc; }));
}

RelationAuditReport audit_relation(const std::vector<InferenceBase>& corpus, Relation relation, EnumerationLimits limits) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyInput, "empty corpus");
  const std::size_t k = corpus.size();
  RelationAuditReport report;
  report.relation = relation;
  report.corpus_size = k;
  for (const auto& ib : corpus) report.hashes.push_back(content_hash(ib));

  std::vector<EvidenceBase> ms;
  std::vector<EvidenceBase> sc;
  std::vector<std::vector<InferenceBase>> conditionals;
  for (const auto& ib : corpus) {
    if (relation == Relation::C) {
      conditionals.push_back(maximal_conditionals(ib, limits));
    } else {
      ms.push_back(ev_ms(ib));
      if (relation == Relation::SC) sc.push_back(ev_sc(ib, limits));
    }
  }

  // witness[i][j]: relabeling with which j relates to i (unused for C).
  std::vector<std::vector<std::optional<Relabeling>>> witness(k, std::vector<std::optional<Relabeling>>(k));
  std::vector<std::vector<bool>> related(k, std::vector<bool>(k, false));
  auto same_thetas = [&](std::size_t i, std::size_t j) { return corpus[i].model.thetas() == corpus[j].model.thetas(); };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!same_thetas(i, j)) continue;
      switch (relation) {
        case Relation::S:
          witness[i][j] = s_relabeling(ms[i], ms[j]);
          related[i][j] = witness[i][j].has_value();
          break;
        case Relation::SC: {
          witness[i][j] = sc_relabeling(sc[i], sc[j]);
          related[i][j] = witness[i][j].has_value();
          const bool in_s = s_relabeling(ms[i], ms[j]).has_value();
          report.containment_checks.push_back({i, j, in_s, related[i][j]});
          break;
        }
        case Relation::C: {
          const auto& ci = conditionals[i];
          const auto& cj = conditionals[j];
          related[i][j] = corpus[i] == corpus[j] || std::find(ci.begin(), ci.end(), corpus[j]) != ci.end() ||
                          std::find(cj.begin(), cj.end(), corpus[i]) != cj.end();
          break;
        }
      }
      if (i != j && related[i][j]) ++report.related_pairs;
    }
  }

  auto valid = [&](std::size_t i, std::size_t j, const Relabeling& h) {
    return relation == Relation::S ? is_s_witness(ms[i], ms[j], h) : is_sc_witness(sc[i], sc[j], h);
  };
  const bool with_witness = relation != Relation::C;

  for (std::size_t i = 0; i < k; ++i) {
    if (!related[i][i] || (with_witness && !valid(i, i, *witness[i][i]))) report.reflexive_failures.push_back(i);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j || !related[i][j]) continue;
      const bool ok = related[j][i] && (!with_witness || valid(j, i, witness[i][j]->inverse()));
      if (!ok) report.symmetric_failures.push_back({i, j});
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!related[i][j]) continue;
      for (std::size_t l = 0; l < k; ++l) {
        if (!related[j][l]) continue;
        // h_il = h_ij ∘ h_jl maps blocks of l to blocks of i.
        const bool ok = related[i][l] && (!with_witness || valid(i, l, witness[i][j]->compose(*witness[j][l])));
        if (!ok) report.transitive_failures.push_back({i, j, l});
      }
    }
  }
  return report;
}

}  // namespace laminal
