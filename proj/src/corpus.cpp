#include "laminal/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "laminal/ancillary.hpp"
#include "laminal/builtin_models.hpp"
#include "laminal/error.hpp"
#include "laminal/sufficiency.hpp"

namespace laminal {

namespace {

// Modulo draws keep the stream identical across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return bound == 0 ? 0 : rng() % bound; }

std::vector<std::string> numbered(const char* prefix, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Splits `mass` over `count` slots proportionally to grid draws (at least
// one positive).
std::vector<Rational> spread(std::mt19937_64& rng, std::size_t count, const Rational& mass, std::uint64_t grid) {
  std::vector<std::uint64_t> raw(count);
  std::uint64_t total = 0;
  for (auto& r : raw) total += (r = draw(rng, grid + 1));
  if (total == 0) {
    raw[draw(rng, count)] = 1;
    total = 1;
  }
  std::vector<Rational> out;
  for (auto r : raw) out.push_back(mass * Rational(static_cast<long>(r), static_cast<long>(total)));
  return out;
}

}  // namespace

FiniteModel random_model(std::mt19937_64& rng, const RandomModelOptions& options) {
  const std::size_t n = 1 + draw(rng, options.max_samples);
  const std::size_t m = 1 + draw(rng, options.max_thetas);
  const std::uint64_t kind = draw(rng, 4);
  Matrix probs(m, Row(n));

  if (kind == 0 || n == 1) {
    for (auto& row : probs) row = spread(rng, n, 1, options.grid);
  } else {
    // Blocks with parameter-free mass.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[draw(rng, i + 1)]);
    std::vector<std::vector<std::size_t>> groups;
    std::size_t pos = 0;
    if (kind == 3 && n >= 4) {
      groups.push_back({order[0], order[1], order[2], order[3]});
      pos = 4;
    }
    while (pos < n) {
      const std::size_t len = std::min(n - pos, 1 + static_cast<std::size_t>(draw(rng, 3)));
      groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos),
                          order.begin() + static_cast<std::ptrdiff_t>(pos + len));
      pos += len;
    }
    const auto masses = spread(rng, groups.size(), 1, 3);
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const auto& group = groups[g];
      const Rational& w = masses[g];
      if (kind == 3 && g == 0 && group.size() == 4) {
        // a + b, c + d, a + c and b + d are parameter-free.
        const Rational steps[] = {Rational(-1, 8), Rational(0), Rational(1, 16), Rational(1, 8)};
        for (Index t = 0; t < m; ++t) {
          const Rational shift = w * steps[draw(rng, 4)];
          probs[t][group[0]] = w * Rational(2, 8) + shift;
          probs[t][group[1]] = w * Rational(2, 8) - shift;
          probs[t][group[2]] = w * Rational(3, 8) - shift;
          probs[t][group[3]] = w * Rational(1, 8) + shift;
        }
        continue;
      }
      for (Index t = 0; t < m; ++t) {
        const auto part = spread(rng, group.size(), w, options.grid);
        for (std::size_t i = 0; i < group.size(); ++i) probs[t][group[i]] = part[i];
      }
    }
  }
  // No dead columns: move mass onto any all-zero column from the largest entry.
  for (Index x = 0; x < n; ++x) {
    const bool dead = std::all_of(probs.begin(), probs.end(), [&](const Row& r) { return r[x].is_zero(); });
    if (!dead) continue;
    Row& row = probs[draw(rng, m)];
    const auto donor = static_cast<Index>(std::max_element(row.begin(), row.end()) - row.begin());
    const Rational half = row[donor] / Rational(2);
    row[donor] -= half;
    row[x] += half;
  }
  return FiniteModel(numbered("theta", m), numbered("", n), std::move(probs), "random");
}

std::vector<FiniteModel> random_models(std::uint64_t seed, std::size_t size, const RandomModelOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<FiniteModel> out;
  for (std::size_t i = 0; i < size; ++i) {
    out.push_back(random_model(rng, options).with_name("random" + std::to_string(i)));
  }
  return out;
}

namespace {

FiniteModel permuted(const FiniteModel& model, std::mt19937_64& rng, std::vector<Index>& where) {
  const std::size_t n = model.sample_count();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[draw(rng, i + 1)]);
  std::vector<std::string> labels;
  Matrix probs(model.theta_count());
  where.assign(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    labels.push_back(model.samples()[order[c]]);
    where[order[c]] = c;
    for (Index t = 0; t < model.theta_count(); ++t) probs[t].push_back(model.prob(t, order[c]));
  }
  return FiniteModel(model.thetas(), std::move(labels), std::move(probs), model.name() + "-perm");
}

// Column x replaced by two columns in ratio 1:2.
FiniteModel split_column(const FiniteModel& model, Index x) {
  std::vector<std::string> labels = model.samples();
  labels.insert(labels.begin() + static_cast<std::ptrdiff_t>(x) + 1, model.samples()[x] + "b");
  labels[x] += "a";
  Matrix probs = model.probs();
  for (auto& row : probs) {
    const Rational third = row[x] / Rational(3);
    row.insert(row.begin() + static_cast<std::ptrdiff_t>(x) + 1, third * Rational(2));
    row[x] = third;
  }
  return FiniteModel(model.thetas(), std::move(labels), std::move(probs), model.name() + "-split");
}

}  // namespace

std::vector<InferenceBase> random_corpus(std::uint64_t seed, std::size_t size, const RandomModelOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<InferenceBase> out;
  std::size_t drawn = 0;
  while (out.size() < size) {
    const FiniteModel model = random_model(rng, options).with_name("random" + std::to_string(drawn++));
    const Index x = draw(rng, model.sample_count());
    out.emplace_back(model, x);
    if (out.size() >= size) break;
    switch (draw(rng, 5)) {
      case 0: {
        std::vector<Index> where;
        FiniteModel p = permuted(model, rng, where);
        out.emplace_back(std::move(p), where[x]);
        break;
      }
      case 1:
        out.emplace_back(split_column(model, x), x);
        break;
      case 2: {
        const Partition mss = mss_partition(model);
        const auto& cls = mss.block(mss.block_of(x));
        out.emplace_back(model, cls[draw(rng, cls.size())]);
        break;
      }
      case 3: {
        const Partition lam = laminal(model);
        if (lam.is_trivial()) break;
        const auto w = spread(rng, lam.size(), 1, 4);
        if (std::any_of(w.begin(), w.end(), [](const Rational& q) { return q.is_zero(); })) break;
        out.emplace_back(mixture_model(model, lam, Weights(w)).with_name(model.name() + "-remix"), x);
        break;
      }
      default:
        break;
    }
  }
  return out;
}

std::vector<InferenceBase> audit_corpus(std::uint64_t seed, std::size_t size, Relation relation) {
  std::vector<InferenceBase> out = random_corpus(seed, size);
  const FiniteModel e1 = example1_model(Rational(1, 100));
  const FiniteModel e2 = example2_model();
  for (Index x = 0; x < e1.sample_count(); ++x) out.emplace_back(e1, x);
  for (Index x = 0; x < e2.sample_count(); ++x) out.emplace_back(e2, x);
  const Partition lam = Partition::parse("1,2,3,4|5,6|7", e1.samples());
  const FiniteModel e1_remix =
      mixture_model(e1, lam, Weights({Rational(1, 5), Rational(27, 100), Rational(53, 100)})).with_name("example1-remix");
  for (Index x = 0; x < e1_remix.sample_count(); ++x) out.emplace_back(e1_remix, x);
  if (relation == Relation::C) {
    for (const auto& c : maximal_conditionals(InferenceBase(e1, 0))) out.push_back(c);
    for (const auto& c : maximal_conditionals(InferenceBase(e2, 0))) out.push_back(c);
  }
  return out;
}

}  // namespace laminal
