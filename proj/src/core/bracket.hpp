#pragma once

#include <cstdint>
#include <functional>

#include "algebra.hpp"

namespace surfalg {

// One crossing of an arc end with a decoration curve.  head = the arc
// terminates at the puncture; fan_pos = index along the curve.
struct EndIncidence {
  int edge = -1;
  bool head = false;
  int puncture = -1;
  int fan_pos = -1;
};

EndIncidence end_incidence(const MarkedSurface& s, int edge, bool head);

// Local case table entry.  The tensor shape is recorded as letter lists per
// slot: 1 refers to the first arc, 2 to the second.
struct LocalCase {
  Rational coeff;
  std::vector<int> slot1;
  std::vector<int> slot2;
};

// (kind1, kind2, order) -> template.  The four first-left rows are the
// defining ones; the first-right rows follow from skew-symmetry.
const LocalCase& local_case(bool head1, bool head2, bool first_left);

// Bracket contribution of a single crossing pair, instantiated with the
// forward arcs of the two edges.  Both ends must sit at one puncture at
// distinct fan positions.
Tensor2 local_pair_bracket(const Ctx& ctx, const EndIncidence& c1,
                           const EndIncidence& c2);

// Definitions of formal inverse symbols: defs[k] = B with Yk * B = B * Yk = 1.
struct SymbolTable {
  std::vector<AlgebraElement> defs;
};

// Bracket of two signed generator letters: sum of local contributions over
// all common decoration curves, inverse rules applied for negative
// exponents.  Formal symbols are resolved through `sym`.
Tensor2 generator_bracket(const Ctx& ctx, Letter g1, Letter g2,
                          const SymbolTable* sym = nullptr);

// Leibniz expansion over raw letter sequences; the result is normal-formed.
Tensor2 double_bracket_words(const Ctx& ctx, const Word& x, const Word& y,
                             const SymbolTable* sym = nullptr);

Tensor2 double_bracket(const AlgebraElement& x, const AlgebraElement& y,
                       const SymbolTable* sym = nullptr);

// Derivation detecting arc endpoints on the decoration curve at p, extended
// to words as an outer-bimodule derivation.
Tensor2 puncture_derivation_word(const Ctx& ctx, int p, const Word& w);
Tensor2 puncture_derivation(int p, const AlgebraElement& x);
// Sum over all punctures.
Tensor2 endpoint_derivation(const AlgebraElement& x);

// Triple bracket induced by the double bracket (cyclic sum of nested
// brackets).
Tensor3 triple_bracket(const AlgebraElement& x, const AlgebraElement& y,
                       const AlgebraElement& z);

// Quarter-product triple bracket of the endpoint derivation, accumulated
// puncture by puncture.
Tensor3 triple_from_derivation(const AlgebraElement& x,
                               const AlgebraElement& y,
                               const AlgebraElement& z);

struct QuasiPoissonReport {
  long triples_checked = 0;
  struct Failure {
    std::string triple;
    std::string lhs;
    std::string rhs;
  };
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

// Compares the two triple brackets on every ordered triple of edge letters,
// plus `word_samples` random triples of two-letter words.
QuasiPoissonReport quasi_poisson_check(const Ctx& ctx, int word_samples = 0,
                                       uint64_t seed = 1);

// Induced bracket on the cyclic space: lift, bracket, multiply, project.
CyclicElement lie_bracket_cyclic(const CyclicElement& a,
                                 const CyclicElement& b);

}  // namespace surfalg
