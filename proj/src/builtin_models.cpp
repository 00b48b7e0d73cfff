#include "laminal/builtin_models.hpp"

#include "laminal/error.hpp"

namespace laminal {

const std::vector<std::vector<AffineEntry>>& example1_table() {
  static const std::vector<std::vector<AffineEntry>> table = {
      {{Rational(1, 8), 1}, {Rational(1, 8), -1}, {Rational(1, 8), 2}, {Rational(1, 8), -2},
       {Rational(1, 14), 0}, {Rational(2, 14), 0}, {Rational(4, 14), 0}},
      {{Rational(1, 16), -1}, {Rational(3, 16), 1}, {Rational(3, 16), 4}, {Rational(1, 16), -4},
       {Rational(2, 14), 0}, {Rational(1, 14), 0}, {Rational(4, 14), 0}},
  };
  return table;
}

FiniteModel example1_model(const Rational& eps, bool allow_degenerate) {
  const bool in_range = eps.sign() > 0 && eps < Rational(1, 64);
  const bool degenerate = allow_degenerate && eps.is_zero();
  if (!in_range && !degenerate) {
    throw Error(ErrorCode::EpsilonOutOfRange, "epsilon " + eps.str() + " not in (0, 1/64)");
  }
  Matrix probs;
  for (const auto& row : example1_table()) {
    Row r;
    for (const auto& entry : row) r.push_back(entry.at(eps));
    probs.push_back(std::move(r));
  }
  return FiniteModel({"theta1", "theta2"}, {"1", "2", "3", "4", "5", "6", "7"}, std::move(probs), "example1");
}

FiniteModel example2_model() {
  return FiniteModel({"theta1", "theta2"}, {"1", "2", "3", "4"},
                     {{Rational(1, 6), Rational(1, 6), Rational(2, 6), Rational(2, 6)},
                      {Rational(1, 12), Rational(3, 12), Rational(5, 12), Rational(3, 12)}},
                     "example2");
}

}  // namespace laminal
