#ifndef MAHLER_TEST_HELPERS_HPP
#define MAHLER_TEST_HELPERS_HPP

// Shared fixtures for the test suites: reference-data access and the
// scalar-equivalence predicate used against transcribed tables.

#include <string>
#include <vector>

#include "mahler/golden.hpp"

namespace testutil {

using namespace mahler;

inline const GoldenData& golden() {
  static GoldenData g = load_golden(default_golden_path());
  return g;
}

// (A1, B1) ~ (A2, B2) when one nonzero rational scalar c gives
// A1 = c A2 and B1 = c B2. Cross-multiplied, so exact over the integers.
inline bool scalar_pair_match(const IntPolynomial& A1, const IntPolynomial& B1,
                              const IntPolynomial& A2, const IntPolynomial& B2) {
  long pos = -1;
  for (long i = 0; i <= A2.degree(); ++i)
    if (A2[i] != 0) {
      pos = i;
      break;
    }
  if (pos < 0) return false;
  if (pos > A1.degree() || A1[pos] == 0) return false;
  const IntPolynomial num = IntPolynomial::constant(A1[pos]);
  const IntPolynomial den = IntPolynomial::constant(A2[pos]);
  return A1 * den == A2 * num && B1 * den == B2 * num;
}

inline std::vector<long> theorem_anchors(const std::string& id) {
  return golden().theorems.at(id).anchors;
}

}  // namespace testutil

#endif
