// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "laminal/ancillary.hpp"
#include "laminal/builtin_models.hpp"
#include "laminal/commands.hpp"
#include "laminal/corpus.hpp"
#include "laminal/error.hpp"
#include "laminal/evidence.hpp"
#include "laminal/sufficiency.hpp"

namespace fs = std::filesystem;
using namespace laminal;

namespace {

Rational q(const char* text) { return Rational::parse(text); }

std::vector<Partition> parse_sorted(std::initializer_list<const char*> texts, const FiniteModel& m) {
  std::vector<Partition> out;
  for (const char* t : texts) out.push_back(Partition::parse(t, m.samples()));
  std::sort(out.begin(), out.end());
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition && pass) detail = what;
    pass = pass && condition;
  }
};

// Ten values k/p in (0, 1/64) with a large prime p, drawn from a fixed seed.
std::vector<Rational> random_epsilons() {
  constexpr long kPrime = 1000003;
  std::mt19937_64 rng(20240601);
  std::vector<Rational> out;
  while (out.size() < 10) {
    const long k = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(kPrime / 64 - 1));
    out.emplace_back(k, kPrime);
  }
  return out;
}

Outcome table2() {
  Outcome o;
  std::vector<Rational> eps = {Rational(1, 100)};
  for (const auto& e : random_epsilons()) eps.push_back(e);
  for (const auto& e : eps) {
    const FiniteModel m = example1_model(e);
    const auto cls = classify(m);
    const auto minimal = parse_sorted({"1,2,3,4,5,6,7", "1,2,3,4,5,6|7", "1,2,3,4,7|5,6", "1,2,3,4|5,6,7",
                                       "1,2,3,4|5,6|7"},
                                      m);
    const auto maximal = parse_sorted({"1,2|3,4|5,6|7", "1,3|2,4|5,6|7"}, m);
    o.require(cls.minimal == minimal, "minimal set differs at eps = " + e.str());
    o.require(cls.maximal == maximal, "maximal set differs at eps = " + e.str());
    o.require(cls.laminal == Partition::parse("1,2,3,4|5,6|7", m.samples()), "laminal differs at eps = " + e.str());
  }
  o.detail = o.pass ? "eps = 1/100 and 10 random values" : o.detail;
  return o;
}

Outcome table4() {
  Outcome o;
  const FiniteModel m = example2_model();
  const Partition a = Partition::parse("1,2|3,4", m.samples());
  const Partition b = Partition::parse("1,3|2,4", m.samples());
  const Matrix ta = conditional_mle_table(m, a, a.block_of(0));
  const Matrix tb = conditional_mle_table(m, b, b.block_of(0));
  o.require(ta[0] == Row{q("1/2"), q("1/2")}, "theta1 given {1,2}");
  o.require(ta[1] == Row{q("1/4"), q("3/4")}, "theta2 given {1,2}");
  o.require(tb[0] == Row{q("1/3"), q("2/3")}, "theta1 given {1,3}");
  o.require(tb[1] == Row{q("1/6"), q("5/6")}, "theta2 given {1,3}");
  return o;
}

Outcome figure() {
  Outcome o;
  const FiniteModel m = example1_model(Rational(1, 100));
  const Partition a1 = Partition::parse("1,2|3,4|5,6|7", m.samples());
  const Partition l = Partition::parse("1,2,3,4|5,6|7", m.samples());
  const Partition c2 = Partition::parse("1,3,5,6|2,4|7", m.samples());
  const std::vector<Rational> w = {q("7/100"), q("13/100"), q("27/100"), q("53/100")};
  const FiniteModel mixed = mixture_model(m, a1, Weights(w));

  // Oracle: P'_theta(B) = sum over x in B of w[A1(x)] P_theta(x) / P_theta(A1(x)), summed
  // directly from the source model.
  auto oracle = [&](Index theta, const SampleSet& block) {
    Rational total;
    for (Index x : block) {
      Rational mass;
      for (Index y : a1.block(a1.block_of(x))) mass += m.prob(theta, y);
      total += w[a1.block_of(x)] * m.prob(theta, x) / mass;
    }
    return total;
  };

  const std::vector<Rational> l_expected = {q("20/100"), q("27/100"), q("53/100")};
  for (std::size_t i = 0; i < l.size(); ++i) {
    const Rational p1 = mixed.event_probability(0, l.block(i));
    const Rational p2 = mixed.event_probability(1, l.block(i));
    o.require(p1 == p2 && p1 == l_expected[i], "L block " + std::to_string(i) + " = " + p1.str() + ", " + p2.str());
  }
  const std::vector<Rational> lr_expected = {q("1916/2015"), q("217/2500") / q("67/1000"), 1};
  bool away = false;
  for (std::size_t i = 0; i < c2.size(); ++i) {
    const Rational p1 = mixed.event_probability(0, c2.block(i));
    const Rational p2 = mixed.event_probability(1, c2.block(i));
    o.require(p1 == oracle(0, c2.block(i)) && p2 == oracle(1, c2.block(i)), "C2 block probability vs oracle");
    o.require(p1 / p2 == oracle(0, c2.block(i)) / oracle(1, c2.block(i)), "C2 ratio vs oracle");
    o.require(p1 / p2 == lr_expected[i], "C2 ratio " + (p1 / p2).str());
    away = away || p1 != p2;
  }
  o.require(away, "every C2 ratio equals 1");
  return o;
}

const std::vector<FiniteModel>& property_corpus() {
  static const std::vector<FiniteModel> models = random_models(2718, 240);
  return models;
}

Outcome stability() {
  Outcome o;
  std::size_t checked = 0;
  std::size_t unstable = 0;
  for (const auto& m : property_corpus()) {
    try {
      AncillaryEngine engine(m);
      const auto minimal = engine.minimal();
      for (const auto& u : engine.ancillaries()) {
        const bool in_minimal = std::binary_search(minimal.begin(), minimal.end(), u);
        const bool stable = engine.is_stable(u);
        const bool strong = engine.is_strong(u);
        o.require(stable == strong && strong == in_minimal, "mismatch on " + u.str() + " of " + m.name());
        ++checked;
        unstable += !stable;
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(property_corpus().size()) + " models, " + std::to_string(checked) + " ancillaries, " +
                      std::to_string(unstable) + " unstable";
  return o;
}

std::set<SampleSet> generated_algebra(const Partition& p) {
  std::set<SampleSet> out;
  const std::size_t k = p.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    SampleSet e;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1U) e.insert(e.end(), p.block(b).begin(), p.block(b).end());
    }
    std::sort(e.begin(), e.end());
    out.insert(e);
  }
  return out;
}

Outcome coherence() {
  Outcome o;
  std::size_t unique_max = 0;
  for (const auto& m : property_corpus()) {
    try {
      const auto cls = classify(m);
      const Partition lam = join(std::span<const Partition>(cls.maximal));
      o.require(is_ancillary(m, lam), "join of maximals not ancillary in " + m.name());
      o.require(lam == cls.laminal, "laminal is not the join of maximals in " + m.name());
      o.require(std::binary_search(cls.minimal.begin(), cls.minimal.end(), lam), "join not minimal in " + m.name());
      for (const auto& u : cls.minimal) o.require(is_coarsening(u, lam), "minimal finer than laminal in " + m.name());
      const std::set<SampleSet> g(cls.gamma0.begin(), cls.gamma0.end());
      o.require(g == generated_algebra(lam), "gamma0 differs from the generated algebra in " + m.name());
      if (cls.maximal.size() == 1) {
        ++unique_max;
        o.require(lam == cls.maximal.front(), "unique maximal differs from laminal in " + m.name());
      }
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
  }
  if (o.pass) {
    o.detail = std::to_string(property_corpus().size()) + " models, " + std::to_string(unique_max) +
               " with a single maximal ancillary";
  }
  return o;
}

Outcome relations() {
  Outcome o;
  const auto corpus = audit_corpus(31, 30, Relation::SC);
  o.require(corpus.size() >= 30, "corpus too small");
  const auto sc = audit_relation(corpus, Relation::SC);
  o.require(sc.is_equivalence(), "SC audit failures");
  o.require(sc.containment_violations() == 0, "an S pair is not SC");
  std::size_t sc_only = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    o.require(check_prop6(corpus[i]), "idempotence fails on member " + std::to_string(i));
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (corpus[i].model.thetas() != corpus[j].model.thetas()) continue;
      const bool s = s_equivalent(corpus[i], corpus[j]).has_value();
      const bool c = sc_equivalent(corpus[i], corpus[j]).has_value();
      o.require(!s || c, "S without SC");
      if (c) o.require(check_prop5(corpus[i], corpus[j]), "conditional bases not S-equivalent");
      sc_only += c && !s;
    }
  }
  const auto c_corpus = audit_corpus(31, 30, Relation::C);
  const auto c = audit_relation(c_corpus, Relation::C);
  o.require(!c.transitive_failures.empty() || !c.symmetric_failures.empty(), "no C violation found");
  if (o.pass) {
    o.detail = std::to_string(corpus.size()) + " bases, " + std::to_string(sc_only) + " SC-only pairs, " +
               std::to_string(c.transitive_failures.size()) + " C transitivity witnesses";
  }
  return o;
}

Outcome degenerate() {
  Outcome o;
  const FiniteModel m = example1_model(Rational(0), true);
  // Oracle: group points by the likelihood ratio column of the symbolic table at eps = 0.
  const auto& table = example1_table();
  std::vector<Rational> ratio;
  for (std::size_t x = 0; x < 7; ++x) ratio.push_back(table[0][x].at(0) / table[1][x].at(0));
  std::vector<std::size_t> label(7);
  for (std::size_t x = 0; x < 7; ++x) {
    label[x] = static_cast<std::size_t>(std::find(ratio.begin(), ratio.end(), ratio[x]) - ratio.begin());
  }
  const Partition oracle = Partition::from_labels(label);
  o.require(mss_partition(m) == oracle, "mss differs from the ratio grouping");
  o.require(oracle == Partition::parse("1,4,6|2,3|5|7", m.samples()), "ratio grouping differs from {1,4,6}|{2,3}|{5}|{7}");
  return o;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const Rational eps(1, 100);
  o.require(reproduce_report("all", eps).render_with_attachments() ==
                reproduce_report("all", eps).render_with_attachments(),
            "library reports differ");
  const fs::path base = fs::temp_directory_path() / "laminal_acceptance";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(LAMINAL_CLI_PATH) + " reproduce all --epsilon 1/100 --out " +
                            (base / run).string() + " > " + (base / (std::string(run) + ".stdout")).string();
    fs::create_directories(base);
    const int status = std::system(cmd.c_str());
    o.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI run failed");
  }
  for (const char* file : {"report.txt", "figure1.csv"}) {
    const std::string a = read_file(base / "a" / file);
    o.require(!a.empty(), std::string(file) + " missing");
    o.require(a == read_file(base / "b" / file), std::string(file) + " differs between runs");
  }
  o.require(read_file(base / "a.stdout") == read_file(base / "b.stdout"), "stdout differs between runs");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 ancillary taxonomy of the first example", table2},
      {"2 conditional MLE table of the second example", table4},
      {"3 reweighting a non-stable ancillary", figure},
      {"4 stable = strong = minimal on random models", stability},
      {"5 laminal coherence on random models", coherence},
      {"6 SC audit, S within SC, idempotence and C violation", relations},
      {"7 degenerate mss at eps = 0", degenerate},
      {"8 deterministic reproduction", determinism},
  };
  bool all = true;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
  }
  return all ? 0 : 1;
}
