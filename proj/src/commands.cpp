#include "laminal/commands.hpp"

#include <algorithm>
#include <map>

#include "laminal/ancillary.hpp"
#include "laminal/builtin_models.hpp"
#include "laminal/corpus.hpp"
#include "laminal/error.hpp"
#include "laminal/sufficiency.hpp"

namespace laminal {

namespace {

std::string lr_text(const Rational& p1, const Rational& p2) {
  if (p2.is_zero()) return p1.is_zero() ? "undefined" : "inf";
  return (p1 / p2).str();
}

std::string lr_decimal(const Rational& p1, const Rational& p2) {
  if (p2.is_zero()) return p1.is_zero() ? "undefined" : "inf";
  return (p1 / p2).decimal();
}

std::vector<std::string> model_table(const FiniteModel& model) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"theta"};
  header.insert(header.end(), model.samples().begin(), model.samples().end());
  rows.push_back(header);
  for (Index t = 0; t < model.theta_count(); ++t) {
    std::vector<std::string> row = {model.thetas()[t]};
    for (const auto& q : model.row(t)) row.push_back(q.str());
    rows.push_back(std::move(row));
  }
  return format_table(rows);
}

void list_partitions(ReportSection& s, const std::vector<Partition>& parts, const FiniteModel& model) {
  for (const auto& p : parts) s.lines.push_back("  " + p.str(model.samples()));
}

}  // namespace

ReportDocument analyze_report(const FiniteModel& model, const AnalyzeOptions& options) {
  ReportDocument doc;
  const Partition mss = mss_partition(model);
  auto& head = doc.add_section("model " + model.name());
  head.lines.push_back("parameters: " + std::to_string(model.theta_count()));
  head.lines.push_back("sample points: " + std::to_string(model.sample_count()));
  for (const auto& line : model_table(model)) head.lines.push_back("  " + line);
  head.lines.push_back("mss partition: " + mss.str(model.samples()));
  head.lines.push_back(options.within_mss ? "search: statistics that are functions of the mss"
                                          : "search: all statistics");

  std::optional<Partition> within;
  if (options.within_mss) within = mss;
  AncillaryEngine engine(model, within, options.limits);
  const auto cls = engine.classify();

  auto& anc = doc.add_section("ancillaries");
  anc.lines.push_back("candidates examined: " + std::to_string(cls.enumerated));
  anc.lines.push_back("ancillary partitions: " + std::to_string(cls.ancillaries.size()));
  if (cls.ancillaries.size() == cls.enumerated) anc.lines.push_back("all partitions ancillary");
  list_partitions(anc, cls.ancillaries, model);

  auto& mx = doc.add_section("maximal ancillaries");
  list_partitions(mx, cls.maximal, model);
  auto& mn = doc.add_section("minimal ancillaries");
  list_partitions(mn, cls.minimal, model);
  auto& lam = doc.add_section("laminal ancillary");
  lam.lines.push_back("  " + cls.laminal.str(model.samples()));
  if (cls.laminal.is_discrete()) lam.lines.push_back("laminal = singletons");
  auto& st = doc.add_section("stable ancillaries");
  list_partitions(st, cls.stable, model);

  auto& g = doc.add_section("gamma0");
  g.lines.push_back("members: " + std::to_string(cls.gamma0.size()));
  std::string generators = "generators:";
  for (const auto& block : cls.laminal.blocks()) generators += " " + format_set(block, model.samples());
  g.lines.push_back(generators);

  auto& w = doc.add_section("instability witnesses");
  std::size_t unstable = 0;
  for (const auto& u : cls.ancillaries) {
    if (std::binary_search(cls.stable.begin(), cls.stable.end(), u)) continue;
    ++unstable;
    const auto witness = engine.instability_witness(u);
    if (!witness) {
      w.lines.push_back(u.str(model.samples()) + ": no witness found");
      doc.ok = false;
      continue;
    }
    w.lines.push_back(u.str(model.samples()) + ": reweight " + witness->via.str(model.samples()) + " to " +
                      format_vector(witness->weights.values()) + "; block " +
                      format_set(witness->unstable.block(witness->block), model.samples()) + " has P_" +
                      model.thetas()[witness->thetas.first] + " = " + witness->lr.first.str() + ", P_" +
                      model.thetas()[witness->thetas.second] + " = " + witness->lr.second.str());
  }
  if (unstable == 0) w.lines.push_back("none: every ancillary is stable");
  return doc;
}

ReportDocument evidence_report(const FiniteModel& model, const std::string& observed, EvidenceFunction function,
                               EnumerationLimits limits) {
  const InferenceBase ib(model, model.sample_index(observed));
  ReportDocument doc;
  const Partition mss = mss_partition(model);
  auto& head = doc.add_section(std::string("evidence ") + (function == EvidenceFunction::MS ? "Ev_MS" : "Ev_SC") +
                               " for model " + model.name() + ", observed " + observed);
  head.lines.push_back("mss partition: " + mss.str(model.samples()));
  const EvidenceBase e = function == EvidenceFunction::MS ? ev_ms(ib) : ev_sc(ib, limits);
  if (e.conditioning_block) {
    const FiniteModel mss_model = model_of_statistic(model, mss);
    head.lines.push_back("laminal of the mss model: " + laminal(mss_model, std::nullopt, limits).str(mss_model.samples()));
    head.lines.push_back("laminal contour: " + format_set(*e.conditioning_block, model.samples()));
  }
  std::string space = "space:";
  for (const auto& block : e.space) space += " " + format_set(block, model.samples());
  head.lines.push_back(space);
  head.lines.push_back("observed block: " + format_set(e.space[e.observed_block], model.samples()));

  auto& table = doc.add_section(e.conditioning_block ? "conditional model" : "mss model");
  for (const auto& line : model_table(e.model)) table.lines.push_back("  " + line);

  auto& checks = doc.add_section("checks");
  doc.check(checks, check_prop6(ib, limits), "Ev_SC = Ev_MS o Ev_SC = Ev_SC o Ev_MS");
  return doc;
}

namespace {

std::vector<Row> columns(const FiniteModel& m) {
  std::vector<Row> out;
  for (Index t = 0; t < m.sample_count(); ++t) out.push_back(m.column(t));
  std::sort(out.begin(), out.end());
  return out;
}

std::string obstruction(const EvidenceBase& e1, const EvidenceBase& e2, Relation relation) {
  if (e1.mss_size != e2.mss_size) {
    return "mss sizes differ: " + std::to_string(e1.mss_size) + " vs " + std::to_string(e2.mss_size) + " blocks";
  }
  if (e1.model.sample_count() != e2.model.sample_count()) {
    return "laminal contours differ in size: " + std::to_string(e1.model.sample_count()) + " vs " +
           std::to_string(e2.model.sample_count()) + " blocks";
  }
  const std::string what = relation == Relation::S ? "probability vectors" : "conditional probability vectors";
  if (e1.model.column(e1.observed_block) != e2.model.column(e2.observed_block)) {
    return "observed blocks have different " + what + ": " + format_vector(e1.model.column(e1.observed_block)) +
           " vs " + format_vector(e2.model.column(e2.observed_block));
  }
  if (columns(e1.model) != columns(e2.model)) return "block " + what + " differ as multisets";
  return "no relabeling found";
}

}  // namespace

ReportDocument compare_report(const FiniteModel& model1, const std::string& observed1, const FiniteModel& model2,
                              const std::string& observed2, Relation relation, EnumerationLimits limits) {
  if (relation == Relation::C) throw Error(ErrorCode::ParseError, "compare supports the s and sc relations");
  if (model1.thetas() != model2.thetas()) {
    throw Error(ErrorCode::ThetaSpaceMismatch,
                "parameter labels differ between '" + model1.name() + "' and '" + model2.name() + "'");
  }
  const InferenceBase ib1(model1, model1.sample_index(observed1));
  const InferenceBase ib2(model2, model2.sample_index(observed2));
  const EvidenceBase e1 = relation == Relation::S ? ev_ms(ib1) : ev_sc(ib1, limits);
  const EvidenceBase e2 = relation == Relation::S ? ev_ms(ib2) : ev_sc(ib2, limits);
  const auto h = relation == Relation::S ? s_relabeling(e1, e2) : sc_relabeling(e1, e2);

  ReportDocument doc;
  auto& s = doc.add_section("compare under " + relation_name(relation));
  s.lines.push_back("first: model " + model1.name() + ", observed " + observed1);
  s.lines.push_back("second: model " + model2.name() + ", observed " + observed2);
  if (!h) {
    s.lines.push_back("NOT-EQUIVALENT");
    s.lines.push_back("obstruction: " + obstruction(e1, e2, relation));
    return doc;
  }
  s.lines.push_back("EQUIVALENT");
  const auto labels1 = model_of_statistic(model1, mss_partition(model1)).samples();
  const auto labels2 = model_of_statistic(model2, mss_partition(model2)).samples();
  std::vector<std::vector<std::string>> rows = {{"second", "first"}};
  for (Index t = 0; t < h->size(); ++t) rows.push_back({labels2[t], labels1[(*h)(t)]});
  auto& table = doc.add_section("relabeling h (second -> first)");
  for (const auto& line : format_table(rows)) table.lines.push_back("  " + line);
  if (h->is_identity()) table.lines.push_back("h = identity");
  return doc;
}

namespace {

// Expected table entries in the form "a/b", "a/b+ke" or "a/b-ke".
AffineEntry parse_affine(const std::string& text) {
  const auto e = text.find('e');
  if (e == std::string::npos) return {Rational::parse(text), 0};
  const auto sign = text.find_last_of("+-");
  const std::string coeff = text.substr(sign + 1, e - sign - 1);
  Rational slope = coeff.empty() ? Rational(1) : Rational::parse(coeff);
  if (text[sign] == '-') slope = -slope;
  return {Rational::parse(text.substr(0, sign)), slope};
}

const std::vector<std::vector<std::string>> kExample1Probabilities = {
    {"1/8+e", "1/8-e", "1/8+2e", "1/8-2e", "1/14", "2/14", "4/14"},
    {"1/16-e", "3/16+e", "3/16+4e", "1/16-4e", "2/14", "1/14", "4/14"},
};

const std::vector<std::pair<std::string, std::string>> kExample1Named = {
    {"T", "1,2,3,4,5,6,7"}, {"B1", "1,2,3,4,5,6|7"}, {"B2", "1,2,3,4,7|5,6"}, {"B3", "1,2,3,4|5,6,7"},
    {"L", "1,2,3,4|5,6|7"}, {"A1", "1,2|3,4|5,6|7"}, {"A2", "1,3|2,4|5,6|7"},
};

const std::vector<std::pair<std::string, std::string>> kExample1Others = {
    {"C1", "1,3|2,4|5,6,7"},
    {"C2", "1,3,5,6|2,4|7"},
};

const std::vector<std::vector<std::string>> kExample2Probabilities = {
    {"1/6", "1/6", "2/6", "2/6"},
    {"1/12", "3/12", "5/12", "3/12"},
};

struct ConditionalMleRow {
  const char* distribution;
  const char* ancillary;
  const char* block;
  const char* first;
  const char* second;
};

const ConditionalMleRow kExample2ConditionalMle[] = {
    {"theta1", "1,2|3,4", "1,2", "1/2", "1/2"},
    {"theta2", "1,2|3,4", "1,2", "1/4", "3/4"},
    {"theta1", "1,3|2,4", "1,3", "1/3", "2/3"},
    {"theta2", "1,3|2,4", "1,3", "1/6", "5/6"},
};

// Reweighting scenario values.
const char* kA1Original[] = {"1/4", "1/4", "3/14", "4/14"};
const char* kReweighting[] = {"7/100", "13/100", "27/100", "53/100"};
const char* kLOriginal[] = {"1/2", "3/14", "4/14"};
const char* kLReweighted[] = {"20/100", "27/100", "53/100"};
// C2 blocks under the reweighting at eps = 1/100: P_theta1, P_theta2, ratio.
const char* kC2Reweighted[][3] = {
    {"479/1250", "403/1000", "1916/2015"},
    {"217/2500", "67/1000", "434/335"},
    {"53/100", "53/100", "1"},
};

std::string name_of(const Partition& p, const FiniteModel& model) {
  for (const auto& list : {kExample1Named, kExample1Others}) {
    for (const auto& [name, text] : list) {
      if (Partition::parse(text, model.samples()) == p) return name;
    }
  }
  return "";
}

void reproduce_example1(ReportDocument& doc, const Rational& eps) {
  const FiniteModel model = example1_model(eps);
  auto& t1 = doc.add_section("example1: distributions and likelihood ratios, eps = " + eps.str());
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"x"};
  header.insert(header.end(), model.samples().begin(), model.samples().end());
  rows.push_back(header);
  for (Index t = 0; t < model.theta_count(); ++t) {
    std::vector<std::string> row = {model.thetas()[t]};
    for (const auto& q : model.row(t)) row.push_back(q.str());
    rows.push_back(std::move(row));
  }
  std::vector<std::string> lr = {"LR"};
  for (Index x = 0; x < model.sample_count(); ++x) lr.push_back(lr_text(model.prob(0, x), model.prob(1, x)));
  rows.push_back(lr);
  for (const auto& line : format_table(rows)) t1.lines.push_back("  " + line);

  bool match = true;
  bool lr_match = true;
  for (Index t = 0; t < 2; ++t) {
    for (Index x = 0; x < 7; ++x) match = match && model.prob(t, x) == parse_affine(kExample1Probabilities[t][x]).at(eps);
  }
  for (Index x = 0; x < 7; ++x) {
    const Rational expected = parse_affine(kExample1Probabilities[0][x]).at(eps) / parse_affine(kExample1Probabilities[1][x]).at(eps);
    lr_match = lr_match && model.prob(0, x) / model.prob(1, x) == expected;
  }
  doc.check(t1, match, "entries equal the expected table at eps = " + eps.str());
  doc.check(t1, lr_match, "likelihood ratios equal the expected ratios");
  doc.check(t1, mss_partition(model).is_discrete(), "minimal sufficient statistic is the identity");

  const auto cls = classify(model);
  auto& t2 = doc.add_section("example1: minimal and maximal ancillaries");
  std::vector<std::vector<std::string>> rows2 = {{"ancillary", "partition", "role"}};
  for (const auto& p : cls.minimal) rows2.push_back({name_of(p, model), p.str(model.samples()), "minimal"});
  for (const auto& p : cls.maximal) rows2.push_back({name_of(p, model), p.str(model.samples()), "maximal"});
  for (const auto& line : format_table(rows2)) t2.lines.push_back("  " + line);
  t2.lines.push_back("ancillary partitions in total: " + std::to_string(cls.ancillaries.size()));

  auto expected_set = [&](std::initializer_list<const char*> names) {
    std::vector<Partition> out;
    for (const char* name : names) {
      for (const auto& [n, text] : kExample1Named) {
        if (n == name) out.push_back(Partition::parse(text, model.samples()));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  doc.check(t2, cls.minimal == expected_set({"T", "B1", "B2", "B3", "L"}), "minimal ancillaries = {T, B1, B2, B3, L}");
  doc.check(t2, cls.maximal == expected_set({"A1", "A2"}), "maximal ancillaries = {A1, A2}");
  doc.check(t2, cls.laminal == expected_set({"L"}).front(), "laminal = L");
  for (const auto& [name, text] : kExample1Others) {
    const Partition p = Partition::parse(text, model.samples());
    const Partition a1 = expected_set({"A1"}).front();
    const Partition a2 = expected_set({"A2"}).front();
    doc.check(t2, is_ancillary(model, p) && is_coarsening(p, a2) && !is_coarsening(p, a1),
              name + " = " + text + " is ancillary, a coarsening of A2 but not of A1");
  }
}

void reproduce_example2(ReportDocument& doc) {
  const FiniteModel model = example2_model();
  auto& t3 = doc.add_section("example2: distributions");
  for (const auto& line : model_table(model)) t3.lines.push_back("  " + line);
  bool match = true;
  for (Index t = 0; t < 2; ++t) {
    for (Index x = 0; x < 4; ++x) match = match && model.prob(t, x) == Rational::parse(kExample2Probabilities[t][x]);
  }
  doc.check(t3, match, "entries equal the expected table");
  const auto maximal = maximal_ancillaries(model);
  std::vector<Partition> expected = {Partition::parse("1,2|3,4", model.samples()),
                                     Partition::parse("1,3|2,4", model.samples())};
  std::sort(expected.begin(), expected.end());
  doc.check(t3, maximal == expected, "maximal ancillaries = {1,2|3,4, 1,3|2,4}");
  const auto hat = mle(model, 0);
  doc.check(t3, hat.theta == 0 && !hat.tie, "MLE at x = 1 is theta1");

  auto& t4 = doc.add_section("example2: conditional distributions of the MLE");
  std::vector<std::vector<std::string>> rows = {{"distribution", "ancillary", "given", "mle=theta1", "mle=theta2"}};
  bool table_match = true;
  for (const auto& row : kExample2ConditionalMle) {
    const Partition a = Partition::parse(row.ancillary, model.samples());
    const Index first = model.sample_index(std::string(row.block).substr(0, 1));
    const Matrix m = conditional_mle_table(model, a, a.block_of(first));
    const Index t = row.distribution == std::string("theta1") ? 0 : 1;
    rows.push_back({row.distribution, row.ancillary, "{" + std::string(row.block) + "}", m[t][0].str(), m[t][1].str()});
    table_match = table_match && m[t][0] == Rational::parse(row.first) && m[t][1] == Rational::parse(row.second);
  }
  for (const auto& line : format_table(rows)) t4.lines.push_back("  " + line);
  doc.check(t4, table_match, "conditional MLE distributions equal the expected table");
}

template <std::size_t N>
std::vector<Rational> parse_all(const char* const (&values)[N]) {
  std::vector<Rational> out;
  for (const char* v : values) out.push_back(Rational::parse(v));
  return out;
}

void reproduce_example3(ReportDocument& doc, const Rational& eps) {
  const FiniteModel model = example1_model(eps);
  const Partition a1 = Partition::parse("1,2|3,4|5,6|7", model.samples());
  const Partition l = Partition::parse("1,2,3,4|5,6|7", model.samples());
  const Partition c2 = Partition::parse("1,3,5,6|2,4|7", model.samples());
  const Weights reweighting(parse_all(kReweighting));
  const FiniteModel reweighted = mixture_model(model, a1, reweighting);

  auto& s = doc.add_section("example3: reweighting A1 = " + a1.str(model.samples()) + ", eps = " + eps.str());
  s.lines.push_back("original distribution of A1: " + format_vector(ancillary_distribution(model, a1)));
  s.lines.push_back("reweighted distribution of A1: " + format_vector(reweighting.values()));

  std::vector<std::vector<std::string>> rows = {{"statistic", "block", "scenario", "P_theta1", "P_theta2", "LR"}};
  std::string csv = "statistic,block,scenario,p_theta1,p_theta2,likelihood_ratio,decimal_lr\n";
  std::map<std::string, std::vector<std::pair<Rational, Rational>>> values;
  for (const auto& [name, stat] : {std::pair{"L", l}, std::pair{"C2", c2}}) {
    for (const auto& [scenario, m] : {std::pair{"original", &model}, std::pair{"reweighted", &reweighted}}) {
      for (const auto& block : stat.blocks()) {
        const Rational p1 = m->event_probability(0, block);
        const Rational p2 = m->event_probability(1, block);
        values[std::string(name) + "/" + scenario].emplace_back(p1, p2);
        const std::string block_text = format_set(block, model.samples());
        rows.push_back({name, block_text, scenario, p1.str(), p2.str(), lr_text(p1, p2)});
        csv += std::string(name) + "," + csv_field(block_text) + "," + scenario + "," + p1.str() + "," + p2.str() +
               "," + lr_text(p1, p2) + "," + lr_decimal(p1, p2) + "\n";
      }
    }
  }
  for (const auto& line : format_table(rows)) s.lines.push_back("  " + line);
  doc.csv_attachments.emplace_back("figure1.csv", csv);

  auto both_equal = [&](const std::string& key, const std::vector<Rational>& expected) {
    const auto& got = values.at(key);
    if (got.size() != expected.size()) return false;
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].first != expected[i] || got[i].second != expected[i]) return false;
    }
    return true;
  };
  doc.check(s, ancillary_distribution(model, a1) == parse_all(kA1Original), "A1 originally (1/4, 1/4, 3/14, 4/14)");
  doc.check(s, both_equal("L/original", parse_all(kLOriginal)), "L originally (1/2, 3/14, 4/14) under both thetas");
  doc.check(s, both_equal("L/reweighted", parse_all(kLReweighted)),
            "L reweighted (20/100, 27/100, 53/100) under both thetas");
  const auto& c2_original = values.at("C2/original");
  doc.check(s, std::all_of(c2_original.begin(), c2_original.end(), [](const auto& p) { return p.first == p.second; }),
            "C2 originally ancillary");
  if (eps == Rational(1, 100)) {
    const auto& got = values.at("C2/reweighted");
    bool match = got.size() == 3;
    bool away = false;
    for (std::size_t i = 0; match && i < 3; ++i) {
      match = got[i].first == Rational::parse(kC2Reweighted[i][0]) && got[i].second == Rational::parse(kC2Reweighted[i][1]) &&
              got[i].first / got[i].second == Rational::parse(kC2Reweighted[i][2]);
      away = away || got[i].first != got[i].second;
    }
    doc.check(s, match, "C2 reweighted likelihood ratios (1916/2015, 434/335, 1)");
    doc.check(s, away, "C2 is informative after reweighting");
  } else {
    s.lines.push_back("SKIP C2 likelihood ratios: expected values are pinned at eps = 1/100");
  }
  doc.check(s, is_stable(model, l) && !is_stable(model, c2), "L stable, C2 unstable");
}

}  // namespace

ReportDocument reproduce_report(const std::string& which, const Rational& eps) {
  if (!(eps.sign() > 0 && eps < Rational(1, 64))) {
    throw Error(ErrorCode::EpsilonOutOfRange, "epsilon " + eps.str() + " not in (0, 1/64)");
  }
  const bool all = which == "all";
  if (!all && which != "example1" && which != "example2" && which != "example3") {
    throw Error(ErrorCode::ParseError, "unknown reproduction target '" + which + "'");
  }
  ReportDocument doc;
  if (all || which == "example1") reproduce_example1(doc, eps);
  if (all || which == "example2") reproduce_example2(doc);
  if (all || which == "example3") reproduce_example3(doc, eps);
  auto& summary = doc.add_section("summary");
  summary.lines.push_back(doc.ok ? "all checks passed" : "some checks FAILED");
  return doc;
}

AuditOutcome audit_report(std::uint64_t seed, std::size_t size, Relation relation) {
  if (size == 0) throw Error(ErrorCode::EmptyInput, "corpus size must be at least 1");
  const auto corpus = audit_corpus(seed, size, relation);
  AuditOutcome out;
  out.audit = audit_relation(corpus, relation);
  const auto& a = out.audit;
  auto& doc = out.report;

  auto tag = [&](std::size_t i) { return "#" + std::to_string(i) + "(" + a.hashes[i] + ")"; };

  auto& head = doc.add_section("audit of relation " + relation_name(relation));
  head.lines.push_back("corpus seed: " + std::to_string(seed));
  head.lines.push_back("random members: " + std::to_string(size));
  head.lines.push_back("corpus size: " + std::to_string(a.corpus_size));
  head.lines.push_back("related ordered pairs (i != j): " + std::to_string(a.related_pairs));
  head.lines.push_back("reflexive failures: " + std::to_string(a.reflexive_failures.size()));
  head.lines.push_back("symmetric failures: " + std::to_string(a.symmetric_failures.size()));
  head.lines.push_back("transitive failures: " + std::to_string(a.transitive_failures.size()));
  head.lines.push_back(a.is_equivalence() ? "equivalence relation on this corpus"
                                          : "NOT an equivalence relation on this corpus");

  constexpr std::size_t kShown = 20;
  if (!a.is_equivalence()) {
    auto& f = doc.add_section("counterexamples");
    for (std::size_t i = 0; i < std::min(kShown, a.reflexive_failures.size()); ++i) {
      f.lines.push_back("reflexive: " + tag(a.reflexive_failures[i]));
    }
    for (std::size_t i = 0; i < std::min(kShown, a.symmetric_failures.size()); ++i) {
      const auto& [x, y] = a.symmetric_failures[i];
      f.lines.push_back("symmetric: " + tag(x) + " ~ " + tag(y) + " but not conversely");
    }
    for (std::size_t i = 0; i < std::min(kShown, a.transitive_failures.size()); ++i) {
      const auto& [x, y, z] = a.transitive_failures[i];
      f.lines.push_back("transitive: " + tag(x) + " ~ " + tag(y) + " ~ " + tag(z) + " but not " + tag(x) + " ~ " + tag(z));
    }
  }

  if (relation == Relation::SC) {
    auto& c = doc.add_section("S within SC");
    std::size_t in_s = 0;
    std::size_t in_sc = 0;
    std::size_t sc_only = 0;
    for (const auto& check : a.containment_checks) {
      if (check.first == check.second) continue;
      in_s += check.in_s;
      in_sc += check.in_sc;
      sc_only += check.in_sc && !check.in_s;
    }
    c.lines.push_back("pairs checked: " + std::to_string(a.containment_checks.size()));
    c.lines.push_back("S-related pairs (i != j): " + std::to_string(in_s));
    c.lines.push_back("SC-related pairs (i != j): " + std::to_string(in_sc));
    c.lines.push_back("SC-related but not S-related: " + std::to_string(sc_only));
    c.lines.push_back("S-related but not SC-related: " + std::to_string(a.containment_violations()));
  }

  auto& members = doc.add_section("corpus");
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    members.lines.push_back(tag(i) + " " + corpus[i].model.name() + " observed " + corpus[i].observed_label());
  }

  out.success = relation == Relation::C ? !a.is_equivalence() : a.is_equivalence() && a.containment_violations() == 0;
  auto& verdict = doc.add_section("verdict");
  verdict.lines.push_back(relation == Relation::C
                              ? (out.success ? "violation found, as expected" : "no violation found")
                              : (out.success ? "pass" : "FAIL"));
  return out;
}

}  // namespace laminal
