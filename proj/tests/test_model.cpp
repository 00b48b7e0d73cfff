#include <doctest.h>

#include <random>

#include "laminal/builtin_models.hpp"
#include "laminal/error.hpp"
#include "laminal/model.hpp"
#include "laminal/partition.hpp"
#include "oracles.hpp"

using namespace laminal;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvariantViolation;
}

Rational q(const char* text) { return Rational::parse(text); }

}  // namespace

TEST_CASE("model invariants are enforced") {
  CHECK(code_of([] { FiniteModel({"a"}, {"1", "2"}, {{q("1/2"), q("1/3")}}); }) == ErrorCode::RowSumError);
  CHECK(code_of([] { FiniteModel({"a"}, {"1", "2"}, {{q("3/2"), q("-1/2")}}); }) == ErrorCode::NegativeProbability);
  CHECK(code_of([] { FiniteModel({"a", "b"}, {"1", "2"}, {{1, 0}, {1, 0}}); }) == ErrorCode::DeadSamplePoint);
  CHECK(code_of([] { FiniteModel({"a"}, {"1", "1"}, {{q("1/2"), q("1/2")}}); }) == ErrorCode::DuplicateLabel);
  CHECK(code_of([] { FiniteModel({"a", "a"}, {"1"}, {{1}, {1}}); }) == ErrorCode::DuplicateLabel);
  CHECK(code_of([] { FiniteModel({"a"}, {"1", "2"}, {{1}}); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { FiniteModel({}, {"1"}, {}); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("text format round trip") {
  const std::string text =
      "# comment\n"
      "model demo\n"
      "thetas a b\n"
      "samples x y z\n"
      "b 1/4 1/4 1/2  # rows in any order\n"
      "a 1/3 1/3 1/3\n";
  const FiniteModel m = parse_model(text);
  CHECK(m.name() == "demo");
  CHECK(m.thetas() == std::vector<std::string>{"a", "b"});
  CHECK(m.prob(0, 0) == Rational(1, 3));
  CHECK(m.prob(1, 2) == Rational(1, 2));
  CHECK(parse_model(serialize_model(m)) == m);
  CHECK(serialize_model(parse_model(serialize_model(m))) == serialize_model(m));
}

TEST_CASE("malformed model text") {
  CHECK(code_of([] { (void)parse_model("thetas a\nsamples 1\na 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)parse_model("model m\nthetas a\nsamples 1 2\na 1/2 x\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)parse_model("model m\nthetas a b\nsamples 1\na 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)parse_model("model m\nthetas a\nsamples 1 2\na 1/2 1/4\n"); }) == ErrorCode::RowSumError);
  CHECK(code_of([] { (void)load_model("/nonexistent/file.model"); }) == ErrorCode::ParseError);
}

TEST_CASE("first example table entries") {
  // Entries written out by hand at eps = 1/100.
  const std::vector<std::vector<const char*>> expected = {
      {"27/200", "23/200", "29/200", "21/200", "1/14", "2/14", "4/14"},
      {"21/400", "79/400", "91/400", "9/400", "2/14", "1/14", "4/14"},
  };
  const FiniteModel m = example1_model(Rational(1, 100));
  REQUIRE(m.theta_count() == 2);
  REQUIRE(m.sample_count() == 7);
  for (Index t = 0; t < 2; ++t) {
    for (Index x = 0; x < 7; ++x) CHECK(m.prob(t, x) == q(expected[t][x]));
  }
  CHECK(m.samples() == std::vector<std::string>{"1", "2", "3", "4", "5", "6", "7"});
}

TEST_CASE("first example epsilon range") {
  CHECK(code_of([] { (void)example1_model(Rational(0)); }) == ErrorCode::EpsilonOutOfRange);
  CHECK(code_of([] { (void)example1_model(Rational(1, 64)); }) == ErrorCode::EpsilonOutOfRange);
  CHECK(code_of([] { (void)example1_model(Rational(-1, 100)); }) == ErrorCode::EpsilonOutOfRange);
  CHECK_NOTHROW((void)example1_model(Rational(0), true));
  CHECK_NOTHROW((void)example1_model(Rational(1, 65)));
}

TEST_CASE("second example table entries") {
  const FiniteModel m = example2_model();
  const std::vector<std::vector<const char*>> expected = {{"1/6", "1/6", "2/6", "2/6"},
                                                          {"1/12", "3/12", "5/12", "3/12"}};
  for (Index t = 0; t < 2; ++t) {
    for (Index x = 0; x < 4; ++x) CHECK(m.prob(t, x) == q(expected[t][x]));
  }
}

TEST_CASE("conditioning renormalizes each row") {
  const FiniteModel m = example1_model(Rational(1, 100));
  const std::vector<Index> event = {4, 5};
  const FiniteModel c = condition_on_event(m, event);
  CHECK(c.samples() == std::vector<std::string>{"5", "6"});
  CHECK(c.row(0) == Row{Rational(1, 3), Rational(2, 3)});
  CHECK(c.row(1) == Row{Rational(2, 3), Rational(1, 3)});
}

TEST_CASE("conditioning drops points that become impossible") {
  const FiniteModel m({"a", "b"}, {"1", "2", "3"}, {{q("1/2"), 0, q("1/2")}, {q("1/2"), q("1/2"), 0}});
  const FiniteModel c = condition_on_event(m, std::vector<Index>{0, 1});
  CHECK(c.samples() == std::vector<std::string>{"1", "2"});
  CHECK(c.row(0) == Row{1, 0});
  CHECK(code_of([&] { (void)condition_on_event(m, std::vector<Index>{1}); }) == ErrorCode::ZeroProbabilityEvent);
}

TEST_CASE("tower property of conditioning") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng() % 4;
    Matrix probs;
    for (int t = 0; t < 2; ++t) probs.push_back(oracle::random_simplex(rng, n, true));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    const FiniteModel m({"a", "b"}, labels, probs);
    // outer = first n-1 points, inner = first 2 points
    std::vector<Index> outer(n - 1);
    for (Index i = 0; i < n - 1; ++i) outer[i] = i;
    const std::vector<Index> inner = {0, 1};
    const FiniteModel twice = condition_on_event(condition_on_event(m, outer), inner);
    CHECK(twice == condition_on_event(m, inner));
  }
}

TEST_CASE("ancillary distribution and mixture") {
  const FiniteModel m = example1_model(Rational(1, 100));
  const Partition a1 = Partition::parse("1,2|3,4|5,6|7", m.samples());
  CHECK(ancillary_distribution(m, a1) == std::vector<Rational>{q("1/4"), q("1/4"), q("3/14"), q("4/14")});

  // Reweighting with the original distribution gives back the model.
  CHECK(mixture_model(m, a1, Weights(ancillary_distribution(m, a1))) == m);

  const Weights w({q("7/100"), q("13/100"), q("27/100"), q("53/100")});
  const FiniteModel mixed = mixture_model(m, a1, w);
  // Direct summation: P'(x) = w[block] * P(x) / P(block).
  for (Index t = 0; t < 2; ++t) {
    Rational total;
    for (Index x = 0; x < 7; ++x) {
      const auto& block = a1.block(a1.block_of(x));
      const Rational expected = w[a1.block_of(x)] * m.prob(t, x) / oracle::block_sum(m, t, block);
      CHECK(mixed.prob(t, x) == expected);
      total += mixed.prob(t, x);
    }
    CHECK(total == Rational(1));
  }
  CHECK(ancillary_distribution(mixed, a1) == w.values());

  const Partition not_anc = Partition::parse("1|2,3,4,5,6,7", m.samples());
  CHECK(code_of([&] { (void)ancillary_distribution(m, not_anc); }) == ErrorCode::NotAncillary);
  CHECK(code_of([&] { (void)mixture_model(m, a1, Weights({q("1/2"), q("1/2")})); }) ==
        ErrorCode::WeightArityMismatch);
  CHECK(code_of([] { Weights({q("1/2"), q("1/3")}); }) == ErrorCode::InvalidWeights);
  CHECK(code_of([] { Weights({q("3/2"), q("-1/2")}); }) == ErrorCode::InvalidWeights);
}

TEST_CASE("mixture with a zero weight drops the block") {
  const FiniteModel m = example1_model(Rational(1, 100));
  const Partition l = Partition::parse("1,2,3,4|5,6|7", m.samples());
  const FiniteModel mixed = mixture_model(m, l, Weights({q("1/2"), 0, q("1/2")}));
  CHECK(mixed.samples() == std::vector<std::string>{"1", "2", "3", "4", "7"});
  CHECK(mixed.dropped() == std::vector<std::string>{"5", "6"});
}

TEST_CASE("mixture is linear in the weights") {
  const FiniteModel m = example1_model(Rational(1, 100));
  const Partition a1 = Partition::parse("1,2|3,4|5,6|7", m.samples());
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w1 = oracle::random_simplex(rng, 4, true);
    const auto w2 = oracle::random_simplex(rng, 4, true);
    const Rational lambda(static_cast<long>(rng() % 10) + 1, 11);
    std::vector<Rational> mix;
    for (std::size_t i = 0; i < 4; ++i) mix.push_back(lambda * w1[i] + (Rational(1) - lambda) * w2[i]);
    const FiniteModel a = mixture_model(m, a1, Weights(w1));
    const FiniteModel b = mixture_model(m, a1, Weights(w2));
    const FiniteModel c = mixture_model(m, a1, Weights(mix));
    for (Index t = 0; t < 2; ++t) {
      for (Index x = 0; x < 7; ++x) {
        CHECK(c.prob(t, x) == lambda * a.prob(t, x) + (Rational(1) - lambda) * b.prob(t, x));
      }
    }
  }
}

TEST_CASE("inference base and content hash") {
  const FiniteModel m = example2_model();
  CHECK(code_of([&] { InferenceBase(m, 4); }) == ErrorCode::InvalidIndex);
  const InferenceBase a(m, 1);
  CHECK(a.observed_label() == "2");
  CHECK(content_hash(a) == content_hash(InferenceBase(example2_model(), 1)));
  CHECK(content_hash(a) != content_hash(InferenceBase(m, 2)));
  CHECK(content_hash(a).size() == 16);
  CHECK(code_of([&] { (void)m.sample_index("9"); }) == ErrorCode::UnknownSampleLabel);
}
