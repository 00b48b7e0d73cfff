#include <doctest.h>

#include "laminal/ancillary.hpp"
#include "laminal/builtin_models.hpp"
#include "laminal/corpus.hpp"
#include "laminal/error.hpp"
#include "laminal/evidence.hpp"

using namespace laminal;

namespace {

Rational q(const char* text) { return Rational::parse(text); }

FiniteModel example1() { return example1_model(Rational(1, 100)); }

FiniteModel example1_remix() {
  const FiniteModel m = example1();
  return mixture_model(m, Partition::parse("1,2,3,4|5,6|7", m.samples()),
                       Weights({q("1/5"), q("27/100"), q("53/100")}));
}

}  // namespace

TEST_CASE("Ev_SC conditions on the laminal contour") {
  const FiniteModel m = example1();
  const EvidenceBase e = ev_sc(InferenceBase(m, m.sample_index("5")));
  REQUIRE(e.conditioning_block.has_value());
  CHECK(*e.conditioning_block == SampleSet{4, 5});
  CHECK(e.model.samples() == std::vector<std::string>{"5", "6"});
  CHECK(e.model.row(0) == Row{q("1/3"), q("2/3")});
  CHECK(e.model.row(1) == Row{q("2/3"), q("1/3")});
  CHECK(e.observed_block == 0);
  CHECK(e.mss_size == 7);
  CHECK(e.mss_index == std::vector<Index>{4, 5});

  const EvidenceBase seven = ev_sc(InferenceBase(m, m.sample_index("7")));
  CHECK(seven.model.sample_count() == 1);
  CHECK(seven.model.row(0) == Row{1});
}

TEST_CASE("Ev_SC on the second example is Ev_MS") {
  const FiniteModel m = example2_model();
  for (Index x = 0; x < 4; ++x) {
    const InferenceBase ib(m, x);
    CHECK(ev_sc(ib).same_evidence(ev_ms(ib)));
  }
}

TEST_CASE("SC relates bases that S separates") {
  const FiniteModel m = example1();
  const FiniteModel r = example1_remix();
  const InferenceBase a(m, 4);
  const InferenceBase b(r, 4);
  CHECK_FALSE(s_equivalent(a, b).has_value());
  const auto h = sc_equivalent(a, b);
  REQUIRE(h.has_value());
  CHECK(h->is_identity());
  CHECK(check_prop5(a, b));
}

TEST_CASE("SC separates different contour models") {
  const FiniteModel m = example1();
  CHECK_FALSE(sc_equivalent(InferenceBase(m, 4), InferenceBase(m, 5)).has_value());
  CHECK_FALSE(sc_equivalent(InferenceBase(m, 4), InferenceBase(m, 6)).has_value());
  try {
    (void)check_prop5(InferenceBase(m, 4), InferenceBase(m, 6));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSCEquivalent);
  }
}

TEST_CASE("idempotence on the examples and a random corpus") {
  auto corpus = random_corpus(12, 40);
  for (Index x = 0; x < 7; ++x) corpus.emplace_back(example1(), x);
  for (Index x = 0; x < 4; ++x) corpus.emplace_back(example2_model(), x);
  for (const auto& ib : corpus) {
    CAPTURE(serialize_model(ib.model));
    CHECK(check_prop6(ib));
  }
}

TEST_CASE("S implies SC") {
  const auto corpus = random_corpus(77, 30);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (corpus[i].model.thetas() != corpus[j].model.thetas()) continue;
      if (s_equivalent(corpus[i], corpus[j])) {
        CHECK(sc_equivalent(corpus[i], corpus[j]).has_value());
        CHECK(check_prop5(corpus[i], corpus[j]));
      }
    }
  }
}

TEST_CASE("classical conditionality is not transitive") {
  const InferenceBase base(example2_model(), 0);
  const auto conditionals = maximal_conditionals(base);
  REQUIRE(conditionals.size() == 2);
  CHECK(c_related(base, conditionals[0]));
  CHECK(c_related(conditionals[0], base));
  CHECK(c_related(base, conditionals[1]));
  CHECK_FALSE(c_related(conditionals[0], conditionals[1]));

  const auto report = audit_relation({conditionals[0], base, conditionals[1]}, Relation::C);
  CHECK_FALSE(report.is_equivalence());
  CHECK_FALSE(report.transitive_failures.empty());
}

TEST_CASE("audits") {
  CHECK_THROWS_AS((void)audit_relation({}, Relation::SC), Error);
  const auto corpus = audit_corpus(3, 20, Relation::SC);
  const auto sc = audit_relation(corpus, Relation::SC);
  CHECK(sc.is_equivalence());
  CHECK(sc.containment_violations() == 0);
  CHECK(sc.corpus_size == corpus.size());
  CHECK(sc.hashes.size() == corpus.size());
  const auto s = audit_relation(corpus, Relation::S);
  CHECK(s.is_equivalence());
  CHECK(sc.related_pairs > s.related_pairs);
  CHECK(relation_name(Relation::SC) == "SC");
}
