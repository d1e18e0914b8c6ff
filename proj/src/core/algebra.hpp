#pragma once

#include <array>
#include <map>
#include <memory>

#include "rational.hpp"
#include "surface.hpp"
#include "word.hpp"

namespace surfalg {

enum class Twist { twisted, untwisted };

// One solved face relation: edge = coeff * word, with coeff in {+1,-1} and
// word free of edges eliminated earlier in the order.
struct Elimination {
  int edge = -1;
  Rational coeff;
  Word word;
};

// Immutable bundle of a surface, a twist mode, and the presentation data
// obtained by eliminating one edge per face.  All algebra values reference
// their Context; operations require pointer-identical contexts.
class Context {
 public:
  Context(MarkedSurface s, Twist t);

  const MarkedSurface& surface() const { return surface_; }
  Twist twist() const { return twist_; }
  // -1 twisted, +1 untwisted: the scalar the fiber class maps to.
  Rational fiber_scalar() const {
    return twist_ == Twist::twisted ? Rational(-1) : Rational(1);
  }

  const std::vector<int>& survivors() const { return survivors_; }
  const std::vector<Elimination>& eliminations() const { return elims_; }
  bool is_eliminated(int edge) const { return elim_index_[edge] >= 0; }

  // Substitute eliminated letters, freely reduce, fold signs.
  std::pair<Rational, Word> normalize_word(const Word& raw) const;

  // The group letters and central constant of a face relation:
  // product(letters) = constant.
  std::pair<Rational, Word> face_relation(int face) const;

 private:
  MarkedSurface surface_;
  Twist twist_;
  std::vector<int> survivors_;
  std::vector<Elimination> elims_;
  std::vector<int> elim_index_;
};

using Ctx = std::shared_ptr<const Context>;
Ctx make_context(MarkedSurface s, Twist t = Twist::twisted);

inline void require_same_ctx(const Ctx& a, const Ctx& b) {
  if (a != b) throw SurfError("mismatch", "operands from different contexts");
}

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(Ctx c) : ctx_(std::move(c)) {}

  static AlgebraElement zero(Ctx c) { return AlgebraElement(std::move(c)); }
  static AlgebraElement unit(Ctx c);
  static AlgebraElement scalar(Ctx c, const Rational& r);
  static AlgebraElement generator(Ctx c, int edge, int exp = 1);
  static AlgebraElement from_word(Ctx c, const Word& w,
                                  const Rational& coeff = Rational(1));
  // Interpret a face-style traversal: -e is the reversed path, which picks
  // up one fiber factor in twisted mode.
  static AlgebraElement from_traversal(Ctx c,
                                       const std::vector<SignedEdge>& w);

  const Ctx& ctx() const { return ctx_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Rational& c, const Word& raw);

  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const AlgebraElement& o) const;
  AlgebraElement operator-() const;
  AlgebraElement scaled(const Rational& r) const;

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Ctx ctx_;
  std::map<Word, Rational> terms_;
};

class Tensor2 {
 public:
  Tensor2() = default;
  explicit Tensor2(Ctx c) : ctx_(std::move(c)) {}

  const Ctx& ctx() const { return ctx_; }
  const std::map<std::array<Word, 2>, Rational>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Rational& c, const Word& w1, const Word& w2);

  Tensor2 operator+(const Tensor2& o) const;
  Tensor2 operator-(const Tensor2& o) const;
  Tensor2 operator-() const;
  Tensor2 scaled(const Rational& r) const;
  // (l1 ⊗ l2) * T * (r1 ⊗ r2) with word factors.
  Tensor2 sandwich(const Word& l1, const Word& l2, const Word& r1,
                   const Word& r2) const;

  friend bool operator==(const Tensor2& a, const Tensor2& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Ctx ctx_;
  std::map<std::array<Word, 2>, Rational> terms_;
};

class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(Ctx c) : ctx_(std::move(c)) {}

  const Ctx& ctx() const { return ctx_; }
  const std::map<std::array<Word, 3>, Rational>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Rational& c, const Word& w1, const Word& w2,
                const Word& w3);

  Tensor3 operator+(const Tensor3& o) const;
  Tensor3 operator-(const Tensor3& o) const;
  Tensor3 scaled(const Rational& r) const;

  friend bool operator==(const Tensor3& a, const Tensor3& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Ctx ctx_;
  std::map<std::array<Word, 3>, Rational> terms_;
};

// Cyclic rotation of tensor slots: x1⊗x2 -> x2⊗x1, x1⊗x2⊗x3 -> x2⊗x3⊗x1.
Tensor2 tau(const Tensor2& t);
Tensor3 tau(const Tensor3& t);

// Multiplication map A⊗A -> A.
AlgebraElement mu(const Tensor2& t);

// Linear combination of conjugacy classes: words stored cyclically reduced
// at their minimal rotation.
class CyclicElement {
 public:
  CyclicElement() = default;
  explicit CyclicElement(Ctx c) : ctx_(std::move(c)) {}

  const Ctx& ctx() const { return ctx_; }
  const std::map<Word, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_class(const Rational& c, const Word& reduced_word);

  CyclicElement operator+(const CyclicElement& o) const;
  CyclicElement operator-(const CyclicElement& o) const;

  friend bool operator==(const CyclicElement& a, const CyclicElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  Ctx ctx_;
  std::map<Word, Rational> terms_;
};

CyclicElement abelianize(const AlgebraElement& x);

// Relabel an element along a surface symmetry.  A sign-reversed edge image
// is the reversed path, contributing a fiber factor in twisted mode.
AlgebraElement apply_symmetry(const SurfaceSymmetry& f,
                              const AlgebraElement& x, const Ctx& dst);
Tensor2 apply_symmetry(const SurfaceSymmetry& f, const Tensor2& t,
                       const Ctx& dst);

}  // namespace surfalg
