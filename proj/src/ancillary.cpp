#include "laminal/ancillary.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "laminal/error.hpp"
#include "laminal/sufficiency.hpp"

namespace laminal {

namespace {

using Mask = std::uint32_t;
// Subset tables are indexed by bitmasks over cells.
constexpr std::size_t kMaxTableBits = 30;

Mask mask_of(const SampleSet& s) {
  Mask m = 0;
  for (Index x : s) m |= Mask{1} << x;
  return m;
}

SampleSet set_of(Mask m) {
  SampleSet s;
  for (Index x = 0; m; ++x, m >>= 1) {
    if (m & 1) s.push_back(x);
  }
  return s;
}

// The partition induced on the columns of a derived model.
Partition restrict_to(const Partition& p, const std::vector<Index>& origin) {
  std::vector<std::size_t> label(origin.size());
  for (std::size_t c = 0; c < origin.size(); ++c) label[c] = p.block_of(origin[c]);
  return Partition::from_labels(label);
}

void invariant(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvariantViolation, what);
}

}  // namespace

bool is_ancillary_event(const FiniteModel& model, std::span<const Index> event) {
  const Rational first = model.event_probability(0, event);
  for (Index i = 1; i < model.theta_count(); ++i) {
    if (model.event_probability(i, event) != first) return false;
  }
  return true;
}

bool is_ancillary(const FiniteModel& model, const Partition& statistic) {
  if (statistic.ground_size() != model.sample_count()) {
    throw Error(ErrorCode::GroundSetMismatch, "partition over " + std::to_string(statistic.ground_size()) +
                                                  " points for a model with " + std::to_string(model.sample_count()));
  }
  return std::all_of(statistic.blocks().begin(), statistic.blocks().end(),
                     [&](const SampleSet& b) { return is_ancillary_event(model, b); });
}

const std::vector<Rational>& default_reweighting() {
  static const std::vector<Rational> w = {Rational(7, 100), Rational(13, 100), Rational(27, 100), Rational(53, 100)};
  return w;
}

struct AncillaryEngine::Impl {
  FiniteModel source;
  std::optional<Partition> within;
  Partition base;
  FiniteModel cells;
  EnumerationLimits limits;

  // table[m] != 0 iff the union of the cells in m has theta-free probability.
  std::vector<std::uint8_t> table;
  std::optional<std::vector<Partition>> anc;  // over cells, sorted
  std::vector<Mask> anc_blocks;               // distinct blocks of `anc`
  std::size_t enumerated = 0;
  std::optional<std::vector<Partition>> max;
  std::optional<std::vector<Partition>> min;
  std::optional<Partition> lam;
  std::map<Mask, bool> atoms;
  std::map<Mask, detail::DerivedModel> conditionals;

  std::optional<std::vector<Partition>> anc_out;
  std::optional<std::vector<Partition>> max_out;
  std::optional<std::vector<Partition>> min_out;
  std::optional<Partition> lam_out;

  Impl(const FiniteModel& model, std::optional<Partition> w, EnumerationLimits l)
      : source(model), within(std::move(w)), base(within ? *within : Partition::discrete(model.sample_count())),
        cells(model_of_statistic(model, base)), limits(l) {}

  std::size_t k() const { return base.size(); }

  void build_table() {
    if (!table.empty()) return;
    if (k() > kMaxTableBits) {
      throw Error(ErrorCode::SizeCapExceeded, std::to_string(k()) + " cells exceed the subset table limit");
    }
    const std::size_t m = cells.theta_count();
    const Mask count = Mask{1} << k();
    table.assign(count, 0);
    table[0] = 1;
    // Gray-code walk: one cell enters or leaves per step.
    std::vector<Rational> sums(m);
    for (Mask i = 1; i < count; ++i) {
      const Mask gray = i ^ (i >> 1);
      const auto cell = static_cast<Index>(std::countr_zero(i));
      const bool entering = (gray >> cell) & 1;
      for (Index t = 0; t < m; ++t) {
        if (entering) {
          sums[t] += cells.prob(t, cell);
        } else {
          sums[t] -= cells.prob(t, cell);
        }
      }
      bool same = true;
      for (Index t = 1; t < m && same; ++t) same = sums[t] == sums[0];
      table[gray] = same ? 1 : 0;
    }
  }

  Partition to_cells(const Partition& statistic) const {
    if (statistic.ground_size() != source.sample_count()) {
      throw Error(ErrorCode::GroundSetMismatch, "partition over " + std::to_string(statistic.ground_size()) +
                                                    " points for a model with " +
                                                    std::to_string(source.sample_count()));
    }
    if (!is_coarsening(statistic, base)) {
      throw Error(ErrorCode::GroundSetMismatch,
                  statistic.str(source.samples()) + " is not a function of " + base.str(source.samples()));
    }
    std::vector<std::size_t> label(k());
    for (std::size_t c = 0; c < k(); ++c) label[c] = statistic.block_of(base.block(c).front());
    return Partition::from_labels(label);
  }

  Partition to_samples(const Partition& over_cells) const { return lift(over_cells, base); }

  std::vector<Partition> to_samples(const std::vector<Partition>& over_cells) const {
    std::vector<Partition> out;
    out.reserve(over_cells.size());
    for (const auto& p : over_cells) out.push_back(to_samples(p));
    std::sort(out.begin(), out.end());
    return out;
  }

  SampleSet cells_to_samples(Mask m) const {
    SampleSet s;
    for (Index c : set_of(m)) s.insert(s.end(), base.block(c).begin(), base.block(c).end());
    std::sort(s.begin(), s.end());
    return s;
  }

  const std::vector<Partition>& ancillaries() {
    if (anc) return *anc;
    PartitionStream stream(k(), std::nullopt, limits);
    build_table();
    std::vector<Partition> found;
    std::set<Mask> blocks;
    std::vector<Mask> masks(k());
    while (stream.advance()) {
      ++enumerated;
      const auto& rgs = stream.cell_rgs();
      const std::size_t count = stream.cell_block_count();
      std::fill_n(masks.begin(), count, Mask{0});
      for (std::size_t c = 0; c < rgs.size(); ++c) masks[rgs[c]] |= Mask{1} << c;
      bool ok = true;
      for (std::size_t b = 0; b < count && ok; ++b) ok = table[masks[b]] != 0;
      if (ok) {
        found.push_back(Partition::from_labels(rgs));
        blocks.insert(masks.begin(), masks.begin() + static_cast<std::ptrdiff_t>(count));
      }
    }
    std::sort(found.begin(), found.end());
    anc_blocks.assign(blocks.begin(), blocks.end());
    anc = std::move(found);
    return *anc;
  }

  // No proper nonempty part of the block is ancillary, so no ancillary
  // partition can split it.
  bool is_atom(Mask block) {
    if (auto it = atoms.find(block); it != atoms.end()) return it->second;
    bool atom = true;
    for (Mask s = (block - 1) & block; s && atom; s = (s - 1) & block) atom = table[s] == 0;
    atoms.emplace(block, atom);
    return atom;
  }

  const std::vector<Partition>& maximal() {
    if (max) return *max;
    std::vector<Partition> out;
    for (const auto& p : ancillaries()) {
      const bool all_atoms = std::all_of(p.blocks().begin(), p.blocks().end(),
                                         [&](const SampleSet& b) { return is_atom(mask_of(b)); });
      if (all_atoms) out.push_back(p);
    }
    invariant(!out.empty(), "no maximal ancillary found");
    max = std::move(out);
    return *max;
  }

  bool coarsens_all_maximal(const Partition& p) {
    return std::all_of(maximal().begin(), maximal().end(), [&](const Partition& w) { return is_coarsening(p, w); });
  }

  const std::vector<Partition>& minimal() {
    if (min) return *min;
    std::vector<Partition> out;
    for (const auto& p : ancillaries()) {
      if (coarsens_all_maximal(p)) out.push_back(p);
    }
    min = std::move(out);
    return *min;
  }

  const Partition& laminal() {
    if (lam) return *lam;
    Partition l = join(maximal());
    invariant(table[0] && std::all_of(l.blocks().begin(), l.blocks().end(),
                                      [&](const SampleSet& b) { return table[mask_of(b)] != 0; }),
              "join of the maximal ancillaries is not ancillary");
    const auto& mins = minimal();
    invariant(std::binary_search(mins.begin(), mins.end(), l), "laminal is not a minimal ancillary");
    for (const auto& p : mins) invariant(is_coarsening(p, l), "a minimal ancillary is not a function of the laminal");
    // The joint statistic of all minimal ancillaries is the laminal again.
    Partition product = Partition::trivial(k());
    for (const auto& p : mins) product = meet(product, p);
    invariant(product == l, "meet of the minimal ancillaries differs from the laminal");
    if (maximal().size() == 1) invariant(l == maximal().front(), "unique maximal ancillary differs from the laminal");
    lam = std::move(l);
    return *lam;
  }

  const detail::DerivedModel& conditional(Mask block) {
    auto it = conditionals.find(block);
    if (it == conditionals.end()) {
      const SampleSet event = set_of(block);
      it = conditionals.emplace(block, detail::condition_tracked(cells, event)).first;
    }
    return it->second;
  }

  // U stays ancillary in M|V=i for every ancillary V and every block i.
  bool stable_definitional(const Partition& u) {
    ancillaries();
    for (Mask block : anc_blocks) {
      const auto& d = conditional(block);
      if (!is_ancillary(d.model, restrict_to(u, d.origin))) return false;
    }
    return true;
  }

  // Every ancillary V stays ancillary in M|U=j for every block j of U.
  bool strong_definitional(const Partition& u) {
    for (const auto& block : u.blocks()) {
      const auto& d = conditional(mask_of(block));
      for (const auto& v : ancillaries()) {
        if (!is_ancillary(d.model, restrict_to(v, d.origin))) return false;
      }
    }
    return true;
  }

  Partition require_ancillary(const Partition& statistic) {
    Partition u = to_cells(statistic);
    if (!is_ancillary(cells, u)) {
      throw Error(ErrorCode::NotAncillary, statistic.str(source.samples()) + " is not ancillary");
    }
    return u;
  }

  bool stable_cells(const Partition& u) {
    const bool definitional = stable_definitional(u);
    const bool structural = coarsens_all_maximal(u);
    invariant(definitional == structural, "stability routes disagree on " + to_samples(u).str(source.samples()));
    return definitional;
  }

  bool strong_cells(const Partition& u) {
    const bool definitional = strong_definitional(u);
    const bool structural = coarsens_all_maximal(u);
    invariant(definitional == structural, "strength and stability disagree on " + to_samples(u).str(source.samples()));
    return definitional;
  }

  std::optional<InstabilityWitness> witness(const Partition& u) {
    if (stable_cells(u)) return std::nullopt;
    std::vector<Partition> candidates = maximal();
    for (const auto& v : ancillaries()) {
      if (!std::binary_search(maximal().begin(), maximal().end(), v)) candidates.push_back(v);
    }
    for (const auto& v : candidates) {
      std::vector<std::vector<Rational>> family;
      if (v.size() == default_reweighting().size()) family.push_back(default_reweighting());
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<Rational> point(v.size());
        point[i] = 1;
        family.push_back(std::move(point));
      }
      for (auto& w : family) {
        Weights weights(w);
        const auto mix = detail::mixture_tracked(cells, v, weights);
        for (std::size_t b = 0; b < u.size(); ++b) {
          std::vector<Rational> mass(mix.model.theta_count());
          for (std::size_t c = 0; c < mix.origin.size(); ++c) {
            if (u.block_of(mix.origin[c]) != b) continue;
            for (Index t = 0; t < mass.size(); ++t) mass[t] += mix.model.prob(t, c);
          }
          for (Index t = 1; t < mass.size(); ++t) {
            if (mass[t] != mass[0]) {
              return InstabilityWitness{to_samples(u), to_samples(v), std::move(weights), b, {0, t},
                                        {mass[0], mass[t]}};
            }
          }
        }
      }
    }
    invariant(false, "unstable ancillary without a witness");
    return std::nullopt;
  }

  std::vector<Mask> event_masks() {
    if (k() > limits.event_cap) {
      throw Error(ErrorCode::SizeCapExceeded, "scanning 2^" + std::to_string(k()) + " events exceeds the cap of 2^" +
                                                  std::to_string(limits.event_cap));
    }
    build_table();
    std::vector<Mask> out;
    for (Mask m = 0; m < table.size(); ++m) {
      if (table[m]) out.push_back(m);
    }
    return out;
  }

  std::vector<Mask> gamma0_masks() {
    const auto events = event_masks();
    constexpr double kPairLimit = 2147483648.0;
    if (static_cast<double>(events.size()) * static_cast<double>(events.size()) > kPairLimit) {
      throw Error(ErrorCode::SizeCapExceeded,
                  std::to_string(events.size()) + " ancillary events are too many for the pairwise conformity scan");
    }
    std::vector<Mask> out;
    for (Mask e : events) {
      bool conforms = true;
      for (auto it = events.begin(); it != events.end() && conforms; ++it) conforms = table[e & *it] != 0;
      if (conforms) out.push_back(e);
    }
    const Mask full = static_cast<Mask>(table.size() - 1);
    std::set<Mask> members(out.begin(), out.end());
    invariant(members.count(0) && members.count(full), "gamma0 lacks the empty set or the whole space");
    for (Mask a : out) {
      invariant(members.count(full & ~a) != 0, "gamma0 is not closed under complement");
      for (Mask b : out) invariant(members.count(a | b) != 0, "gamma0 is not closed under union");
    }
    if (k() <= limits.partition_cap) {
      const auto& l = laminal();
      std::set<Mask> generated;
      for (Mask pick = 0; pick < (Mask{1} << l.size()); ++pick) {
        Mask m = 0;
        for (std::size_t b = 0; b < l.size(); ++b) {
          if ((pick >> b) & 1) m |= mask_of(l.block(b));
        }
        generated.insert(m);
      }
      invariant(generated == members, "gamma0 differs from the algebra generated by the laminal");
    }
    return out;
  }

  std::vector<SampleSet> to_sets(const std::vector<Mask>& masks) const {
    std::vector<SampleSet> out;
    out.reserve(masks.size());
    for (Mask m : masks) out.push_back(cells_to_samples(m));
    return out;
  }
};

AncillaryEngine::AncillaryEngine(const FiniteModel& model, std::optional<Partition> within, EnumerationLimits limits)
    : impl_(std::make_unique<Impl>(model, std::move(within), limits)) {}
AncillaryEngine::~AncillaryEngine() = default;
AncillaryEngine::AncillaryEngine(AncillaryEngine&&) noexcept = default;
AncillaryEngine& AncillaryEngine::operator=(AncillaryEngine&&) noexcept = default;

const FiniteModel& AncillaryEngine::model() const { return impl_->source; }
const std::optional<Partition>& AncillaryEngine::within() const { return impl_->within; }

const std::vector<Partition>& AncillaryEngine::ancillaries() {
  if (!impl_->anc_out) impl_->anc_out = impl_->to_samples(impl_->ancillaries());
  return *impl_->anc_out;
}

const std::vector<Partition>& AncillaryEngine::maximal() {
  if (!impl_->max_out) impl_->max_out = impl_->to_samples(impl_->maximal());
  return *impl_->max_out;
}

const std::vector<Partition>& AncillaryEngine::minimal() {
  if (!impl_->min_out) impl_->min_out = impl_->to_samples(impl_->minimal());
  return *impl_->min_out;
}

const Partition& AncillaryEngine::laminal() {
  if (!impl_->lam_out) impl_->lam_out = impl_->to_samples(impl_->laminal());
  return *impl_->lam_out;
}

std::size_t AncillaryEngine::enumerated() {
  impl_->ancillaries();
  return impl_->enumerated;
}

bool AncillaryEngine::is_stable(const Partition& statistic) {
  return impl_->stable_cells(impl_->require_ancillary(statistic));
}

bool AncillaryEngine::is_strong(const Partition& statistic) {
  return impl_->strong_cells(impl_->require_ancillary(statistic));
}

std::optional<InstabilityWitness> AncillaryEngine::instability_witness(const Partition& statistic) {
  return impl_->witness(impl_->require_ancillary(statistic));
}

std::vector<SampleSet> AncillaryEngine::ancillary_events() { return impl_->to_sets(impl_->event_masks()); }

std::vector<SampleSet> AncillaryEngine::gamma0() { return impl_->to_sets(impl_->gamma0_masks()); }

AncillaryClassification AncillaryEngine::classify() {
  AncillaryClassification out;
  out.ancillaries = ancillaries();
  out.maximal = maximal();
  out.minimal = minimal();
  out.laminal = laminal();
  for (const auto& p : impl_->ancillaries()) {
    if (impl_->stable_cells(p)) out.stable.push_back(impl_->to_samples(p));
  }
  std::sort(out.stable.begin(), out.stable.end());
  invariant(out.stable == out.minimal, "stable ancillaries differ from the minimal ancillaries");
  out.gamma0 = gamma0();
  out.within = impl_->within;
  out.restricted_to_mss = impl_->within && *impl_->within == mss_partition(impl_->source);
  out.enumerated = impl_->enumerated;
  return out;
}

std::vector<Partition> ancillaries(const FiniteModel& model, std::optional<Partition> within, EnumerationLimits limits) {
  return AncillaryEngine(model, std::move(within), limits).ancillaries();
}

std::vector<Partition> maximal_ancillaries(const FiniteModel& model, std::optional<Partition> within,
                                           EnumerationLimits limits) {
  return AncillaryEngine(model, std::move(within), limits).maximal();
}

std::vector<Partition> minimal_ancillaries(const FiniteModel& model, std::optional<Partition> within,
                                           EnumerationLimits limits) {
  return AncillaryEngine(model, std::move(within), limits).minimal();
}

Partition laminal(const FiniteModel& model, std::optional<Partition> within, EnumerationLimits limits) {
  return AncillaryEngine(model, std::move(within), limits).laminal();
}

bool is_stable(const FiniteModel& model, const Partition& statistic, EnumerationLimits limits) {
  return AncillaryEngine(model, std::nullopt, limits).is_stable(statistic);
}

bool is_strong(const FiniteModel& model, const Partition& statistic, EnumerationLimits limits) {
  return AncillaryEngine(model, std::nullopt, limits).is_strong(statistic);
}

std::optional<InstabilityWitness> instability_witness(const FiniteModel& model, const Partition& statistic,
                                                      EnumerationLimits limits) {
  return AncillaryEngine(model, std::nullopt, limits).instability_witness(statistic);
}

std::vector<SampleSet> ancillary_events(const FiniteModel& model, EnumerationLimits limits) {
  return AncillaryEngine(model, std::nullopt, limits).ancillary_events();
}

std::vector<SampleSet> gamma0(const FiniteModel& model, EnumerationLimits limits) {
  return AncillaryEngine(model, std::nullopt, limits).gamma0();
}

AncillaryClassification classify(const FiniteModel& model, std::optional<Partition> within, EnumerationLimits limits) {
  return AncillaryEngine(model, std::move(within), limits).classify();
}

MleResult mle(const FiniteModel& model, Index x) {
  if (x >= model.sample_count()) throw Error(ErrorCode::InvalidIndex, "sample index " + std::to_string(x));
  MleResult best;
  for (Index t = 1; t < model.theta_count(); ++t) {
    const auto order = model.prob(t, x) <=> model.prob(best.theta, x);
    if (order > 0) {
      best = {t, false};
    } else if (order == 0) {
      best.tie = true;
    }
  }
  return best;
}

Matrix conditional_mle_table(const FiniteModel& model, const Partition& statistic, std::size_t block) {
  if (!is_ancillary(model, statistic)) {
    throw Error(ErrorCode::NotAncillary, statistic.str(model.samples()) + " is not ancillary");
  }
  if (block >= statistic.size()) {
    throw Error(ErrorCode::InvalidIndex, "block " + std::to_string(block) + " of a " +
                                             std::to_string(statistic.size()) + "-block partition");
  }
  const auto d = detail::condition_tracked(model, statistic.block(block));
  const std::size_t m = model.theta_count();
  Matrix table(m, Row(m));
  for (std::size_t c = 0; c < d.origin.size(); ++c) {
    const Index hat = mle(model, d.origin[c]).theta;
    for (Index r = 0; r < m; ++r) table[r][hat] += d.model.prob(r, c);
  }
  return table;
}

}  // namespace laminal
