#pragma once

#include <string>

#include "algebra.hpp"

namespace surfalg {

// Canonical text forms.  Terms are sorted by the rendered word strings;
// coefficients always print as p/q in lowest terms; the leftmost letter of a
// word is the last-applied factor; the empty word prints as "1" and the zero
// element as "0".  Formal inverse symbols print as Y0, Y1, ...
std::string render_word(const Context& ctx, const Word& w);
std::string render_element(const AlgebraElement& x);
std::string render_tensor2(const Tensor2& t);
std::string render_tensor3(const Tensor3& t);
std::string render_cyclic(const CyclicElement& x);

// Recursive-descent parser for element literals.  Accepts the canonical form
// and the obvious shorthands: coefficients and exponents may be omitted
// ("a1", "2/3 * a1^-1 a2", "a1 + -1/2 * a2").
AlgebraElement parse_element(const Ctx& ctx, const std::string& text);

// Tensor literal: "(term) (x) (term)" summands joined by " + ".
Tensor2 parse_tensor2(const Ctx& ctx, const std::string& text);

}  // namespace surfalg
