#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "laminal/commands.hpp"
#include "laminal/error.hpp"

namespace fs = std::filesystem;
using namespace laminal;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

void emit(const ReportDocument& doc, const std::string& out_dir) {
  const std::string text = doc.render();
  std::cout << text;
  if (out_dir.empty()) return;
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "report.txt", text);
  for (const auto& [name, csv] : doc.csv_attachments) write_file(fs::path(out_dir) / name, csv);
}

Relation parse_relation(const std::string& text) {
  if (text == "s") return Relation::S;
  if (text == "sc") return Relation::SC;
  if (text == "c") return Relation::C;
  throw Error(ErrorCode::ParseError, "unknown relation '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact sufficiency and ancillarity analysis of finite statistical models"};
  app.require_subcommand(1);

  std::string out_dir;
  app.add_option("--out", out_dir, "Directory for report.txt and CSV attachments");

  auto* analyze = app.add_subcommand("analyze", "Classify the ancillary statistics of a model");
  std::string analyze_file;
  bool within_mss = true;
  std::size_t cap = EnumerationLimits{}.partition_cap;
  analyze->add_option("model", analyze_file, "Model file")->required();
  analyze->add_flag("--within-mss,!--no-within-mss", within_mss, "Restrict to functions of the mss");
  analyze->add_option("--cap", cap, "Largest ground set to enumerate");

  auto* evidence = app.add_subcommand("evidence", "Evaluate an evidence function at an observation");
  std::string evidence_file;
  std::string observed;
  std::string function = "sc";
  evidence->add_option("model", evidence_file, "Model file")->required();
  evidence->add_option("--observed", observed, "Observed sample label")->required();
  evidence->add_option("--function", function, "ms or sc")->check(CLI::IsMember({"ms", "sc"}));

  auto* compare = app.add_subcommand("compare", "Decide S or SC equivalence of two inference bases");
  std::string file1;
  std::string file2;
  std::string observed1;
  std::string observed2;
  std::string compare_relation = "sc";
  compare->add_option("model1", file1, "First model file")->required();
  compare->add_option("model2", file2, "Second model file")->required();
  compare->add_option("--observed1", observed1, "Observed label in the first model")->required();
  compare->add_option("--observed2", observed2, "Observed label in the second model")->required();
  compare->add_option("--relation", compare_relation, "s or sc")->check(CLI::IsMember({"s", "sc"}));

  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the worked example tables");
  std::string which;
  std::string epsilon = "1/100";
  reproduce->add_option("which", which, "example1, example2, example3 or all")->required();
  reproduce->add_option("--epsilon", epsilon, "Perturbation a/b in (0, 1/64)");

  auto* audit = app.add_subcommand("audit", "Audit an evidential relation on a random corpus");
  std::uint64_t seed = 1;
  std::size_t size = 30;
  std::string audit_relation = "sc";
  audit->add_option("--corpus-seed", seed, "Corpus seed");
  audit->add_option("--corpus-size", size, "Number of random members");
  audit->add_option("--relation", audit_relation, "s, sc or c")->check(CLI::IsMember({"s", "sc", "c"}));

  for (auto* sub : {analyze, evidence, compare, reproduce, audit}) {
    sub->add_option("--out", out_dir, "Directory for report.txt and CSV attachments");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*analyze) {
      AnalyzeOptions options;
      options.within_mss = within_mss;
      options.limits.partition_cap = cap;
      emit(analyze_report(load_model(analyze_file), options), out_dir);
      return kExitOk;
    }
    if (*evidence) {
      const auto fn = function == "ms" ? EvidenceFunction::MS : EvidenceFunction::SC;
      emit(evidence_report(load_model(evidence_file), observed, fn), out_dir);
      return kExitOk;
    }
    if (*compare) {
      emit(compare_report(load_model(file1), observed1, load_model(file2), observed2, parse_relation(compare_relation)),
           out_dir);
      return kExitOk;
    }
    if (*reproduce) {
      const auto doc = reproduce_report(which, Rational::parse(epsilon));
      emit(doc, out_dir);
      return doc.ok ? kExitOk : kExitFailure;
    }
    if (*audit) {
      const auto outcome = audit_report(seed, size, parse_relation(audit_relation));
      emit(outcome.report, out_dir);
      return outcome.success ? kExitOk : kExitFailure;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::SizeCapExceeded) return kExitCap;
    if (e.code() == ErrorCode::InvariantViolation) return kExitFailure;
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
