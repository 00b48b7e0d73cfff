#pragma once

#include <cstdint>
#include <string>

#include "laminal/evidence.hpp"
#include "laminal/model.hpp"
#include "laminal/partition.hpp"
#include "laminal/report.hpp"

namespace laminal {

// Report builders behind the command-line verbs. Each is deterministic in
// its inputs.

struct AnalyzeOptions {
  bool within_mss = true;
  EnumerationLimits limits{};
};

/// mss, ancillaries, maximal/minimal/laminal/stable sets, gamma0 and an
/// instability witness for every ancillary that is not stable.
ReportDocument analyze_report(const FiniteModel& model, const AnalyzeOptions& options = {});

enum class EvidenceFunction { MS, SC };

/// Throws Error(UnknownSampleLabel) for an unknown observed label.
ReportDocument evidence_report(const FiniteModel& model, const std::string& observed, EvidenceFunction function,
                               EnumerationLimits limits = {});

/// `relation` must be S or SC. Throws Error(ThetaSpaceMismatch).
ReportDocument compare_report(const FiniteModel& model1, const std::string& observed1, const FiniteModel& model2,
                              const std::string& observed2, Relation relation, EnumerationLimits limits = {});

/// `which` is example1, example2, example3 or all. Every regenerated table
/// is followed by PASS/FAIL lines against embedded expected values; example3
/// attaches figure1.csv. Throws Error(EpsilonOutOfRange) or Error(ParseError)
/// for an unknown `which`.
ReportDocument reproduce_report(const std::string& which, const Rational& eps);

struct AuditOutcome {
  ReportDocument report;
  RelationAuditReport audit;
  /// S and SC: the relation is an equivalence on the corpus (and, for SC,
  /// contains S). C: a violation was found.
  bool success = false;
};

AuditOutcome audit_report(std::uint64_t seed, std::size_t size, Relation relation);

}  // namespace laminal
