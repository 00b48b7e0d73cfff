#pragma once

#include "laminal/model.hpp"

namespace laminal {

/// Two-parameter, seven-point model whose entries are affine in `eps`
/// (first four columns) with a fixed tail (1/14, 2/14, 4/14 vs 2/14, 1/14, 4/14).
/// Requires 0 < eps < 1/64; eps == 0 is accepted only with
/// `allow_degenerate`, where the minimal sufficient statistic collapses.
/// Throws Error(EpsilonOutOfRange).
FiniteModel example1_model(const Rational& eps, bool allow_degenerate = false);

/// Two-parameter, four-point model with two maximal ancillaries
/// {1,2}|{3,4} and {1,3}|{2,4}.
FiniteModel example2_model();

/// One entry a + b*eps of the first example's table.
struct AffineEntry {
  Rational constant;
  Rational slope;
  Rational at(const Rational& eps) const { return constant + slope * eps; }
};

/// The first example's table in symbolic form, rows theta1 and theta2.
const std::vector<std::vector<AffineEntry>>& example1_table();

}  // namespace laminal
