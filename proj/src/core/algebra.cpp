#include "algebra.hpp"

#include <algorithm>
#include <sstream>

namespace surfalg {

namespace {

// Group letters of a face word plus the central constant the product equals.
// Each reversed traversal contributes one fiber factor, so with m reversed
// letters the relation reads  product = delta^(1-m).
std::pair<Rational, Word> face_relation_impl(const MarkedSurface& s,
                                             Twist twist, int face) {
  const auto& w = s.faces[face].word;
  Word letters;
  int reversed = 0;
  for (const auto& se : w) {
    letters.push_back(Letter{se.edge, static_cast<int8_t>(se.sign)});
    if (se.sign < 0) ++reversed;
  }
  Rational c(1);
  if (twist == Twist::twisted && ((1 - reversed) % 2 != 0)) c = Rational(-1);
  return {c, letters};
}

}  // namespace

Context::Context(MarkedSurface s, Twist t)
    : surface_(std::move(s)), twist_(t) {
  elim_index_.assign(surface_.edges.size(), -1);

  // Greedy shelling: repeatedly take a face owning an edge that appears once
  // in it and nowhere else among unprocessed faces, and solve for that edge.
  std::vector<char> done(surface_.faces.size(), 0);
  size_t remaining = surface_.faces.size();
  while (remaining > 0) {
    int pick_face = -1, pick_pos = -1;
    for (size_t fi = 0; fi < surface_.faces.size() && pick_face < 0; ++fi) {
      if (done[fi]) continue;
      const auto& w = surface_.faces[fi].word;
      for (size_t j = 0; j < w.size(); ++j) {
        int e = w[j].edge;
        if (elim_index_[e] >= 0) continue;
        int here = 0, elsewhere = 0;
        for (const auto& se : w)
          if (se.edge == e) ++here;
        for (size_t gj = 0; gj < surface_.faces.size(); ++gj) {
          if (gj == fi || done[gj]) continue;
          for (const auto& se : surface_.faces[gj].word)
            if (se.edge == e) ++elsewhere;
        }
        if (here == 1 && elsewhere == 0) {
          pick_face = static_cast<int>(fi);
          pick_pos = static_cast<int>(j);
          break;
        }
      }
    }
    if (pick_face < 0) {
      std::ostringstream os;
      os << "shelling stuck; unprocessed faces:";
      for (size_t fi = 0; fi < surface_.faces.size(); ++fi)
        if (!done[fi]) os << ' ' << surface_.faces[fi].name;
      throw SurfError("reduction", os.str());
    }

    auto [c, letters] = face_relation_impl(surface_, twist_, pick_face);
    Letter target = letters[pick_pos];
    Word prefix(letters.begin(), letters.begin() + pick_pos);
    Word suffix(letters.begin() + pick_pos + 1, letters.end());
    Elimination elim;
    elim.edge = target.edge;
    elim.coeff = c;  // +/-1, self-inverse
    if (target.exp > 0)
      elim.word = concat(inverse_word(prefix), inverse_word(suffix));
    else
      elim.word = concat(suffix, prefix);
    for (const Letter& l : elim.word)
      if (elim_index_[l.edge] >= 0)
        throw SurfError("reduction",
                        "shelling invariant broken: earlier eliminated edge "
                        "in defining word");
    elim_index_[elim.edge] = static_cast<int>(elims_.size());
    elims_.push_back(std::move(elim));
    done[pick_face] = 1;
    --remaining;
  }

  for (size_t e = 0; e < surface_.edges.size(); ++e)
    if (elim_index_[e] < 0) survivors_.push_back(static_cast<int>(e));

  // The tensor model takes coefficients in the rationals, which is the
  // center only when the quotient free group has rank at least two.
  if (survivors_.size() < 2)
    throw SurfError("rank", "free rank " + std::to_string(survivors_.size()) +
                                " < 2; center would exceed the rationals");
}

std::pair<Rational, Word> Context::normalize_word(const Word& raw) const {
  Rational coeff(1);
  Word cur = raw;
  for (const auto& elim : elims_) {
    bool touched = false;
    for (const Letter& l : cur)
      if (l.edge == elim.edge) {
        touched = true;
        break;
      }
    if (!touched) continue;
    Word next;
    next.reserve(cur.size() + 2);
    for (const Letter& l : cur) {
      if (l.edge != elim.edge) {
        next.push_back(l);
        continue;
      }
      coeff *= elim.coeff;
      if (l.exp > 0)
        next.insert(next.end(), elim.word.begin(), elim.word.end());
      else {
        Word inv = inverse_word(elim.word);
        next.insert(next.end(), inv.begin(), inv.end());
      }
    }
    cur = std::move(next);
  }
  return {coeff, free_reduce(cur)};
}

std::pair<Rational, Word> Context::face_relation(int face) const {
  return face_relation_impl(surface_, twist_, face);
}

Ctx make_context(MarkedSurface s, Twist t) {
  return std::make_shared<const Context>(std::move(s), t);
}

AlgebraElement AlgebraElement::unit(Ctx c) {
  return scalar(std::move(c), Rational(1));
}

AlgebraElement AlgebraElement::scalar(Ctx c, const Rational& r) {
  AlgebraElement x(std::move(c));
  x.add_term(r, Word{});
  return x;
}

AlgebraElement AlgebraElement::generator(Ctx c, int edge, int exp) {
  AlgebraElement x(std::move(c));
  x.add_term(Rational(1), Word{Letter{edge, static_cast<int8_t>(exp)}});
  return x;
}

AlgebraElement AlgebraElement::from_word(Ctx c, const Word& w,
                                         const Rational& coeff) {
  AlgebraElement x(std::move(c));
  x.add_term(coeff, w);
  return x;
}

AlgebraElement AlgebraElement::from_traversal(
    Ctx c, const std::vector<SignedEdge>& w) {
  Rational coeff(1);
  Word letters;
  for (const auto& se : w) {
    letters.push_back(Letter{se.edge, static_cast<int8_t>(se.sign)});
    if (se.sign < 0) coeff *= c->fiber_scalar();
  }
  AlgebraElement x(std::move(c));
  x.add_term(coeff, letters);
  return x;
}

void AlgebraElement::add_term(const Rational& c, const Word& raw) {
  if (c == 0) return;
  auto [sign, nf] = ctx_->normalize_word(raw);
  Rational& slot = terms_[nf];
  slot += c * sign;
  if (slot == 0) terms_.erase(nf);
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  require_same_ctx(ctx_, o.ctx_);
  AlgebraElement r = *this;
  for (const auto& [w, c] : o.terms_) {
    Rational& slot = r.terms_[w];
    slot += c;
    if (slot == 0) r.terms_.erase(w);
  }
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  return *this + (-o);
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r(ctx_);
  for (const auto& [w, c] : terms_) r.terms_[w] = -c;
  return r;
}

AlgebraElement AlgebraElement::scaled(const Rational& s) const {
  AlgebraElement r(ctx_);
  if (s == 0) return r;
  for (const auto& [w, c] : terms_) r.terms_[w] = c * s;
  return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
  require_same_ctx(ctx_, o.ctx_);
  AlgebraElement r(ctx_);
  for (const auto& [w1, c1] : terms_)
    for (const auto& [w2, c2] : o.terms_) r.add_term(c1 * c2, concat(w1, w2));
  return r;
}

void Tensor2::add_term(const Rational& c, const Word& w1, const Word& w2) {
  if (c == 0) return;
  auto [s1, n1] = ctx_->normalize_word(w1);
  auto [s2, n2] = ctx_->normalize_word(w2);
  std::array<Word, 2> key{n1, n2};
  Rational& slot = terms_[key];
  slot += c * s1 * s2;
  if (slot == 0) terms_.erase(key);
}

Tensor2 Tensor2::operator+(const Tensor2& o) const {
  require_same_ctx(ctx_, o.ctx_);
  Tensor2 r = *this;
  for (const auto& [k, c] : o.terms_) {
    Rational& slot = r.terms_[k];
    slot += c;
    if (slot == 0) r.terms_.erase(k);
  }
  return r;
}

Tensor2 Tensor2::operator-(const Tensor2& o) const { return *this + (-o); }

Tensor2 Tensor2::operator-() const {
  Tensor2 r(ctx_);
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

Tensor2 Tensor2::scaled(const Rational& s) const {
  Tensor2 r(ctx_);
  if (s == 0) return r;
  for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
  return r;
}

Tensor2 Tensor2::sandwich(const Word& l1, const Word& l2, const Word& r1,
                          const Word& r2) const {
  Tensor2 r(ctx_);
  for (const auto& [k, c] : terms_)
    r.add_term(c, concat(concat(l1, k[0]), r1), concat(concat(l2, k[1]), r2));
  return r;
}

void Tensor3::add_term(const Rational& c, const Word& w1, const Word& w2,
                       const Word& w3) {
  if (c == 0) return;
  auto [s1, n1] = ctx_->normalize_word(w1);
  auto [s2, n2] = ctx_->normalize_word(w2);
  auto [s3, n3] = ctx_->normalize_word(w3);
  std::array<Word, 3> key{n1, n2, n3};
  Rational& slot = terms_[key];
  slot += c * s1 * s2 * s3;
  if (slot == 0) terms_.erase(key);
}

Tensor3 Tensor3::operator+(const Tensor3& o) const {
  require_same_ctx(ctx_, o.ctx_);
  Tensor3 r = *this;
  for (const auto& [k, c] : o.terms_) {
    Rational& slot = r.terms_[k];
    slot += c;
    if (slot == 0) r.terms_.erase(k);
  }
  return r;
}

Tensor3 Tensor3::operator-(const Tensor3& o) const {
  return *this + o.scaled(Rational(-1));
}

Tensor3 Tensor3::scaled(const Rational& s) const {
  Tensor3 r(ctx_);
  if (s == 0) return r;
  for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
  return r;
}

Tensor2 tau(const Tensor2& t) {
  Tensor2 r(t.ctx());
  for (const auto& [k, c] : t.terms()) r.add_term(c, k[1], k[0]);
  return r;
}

Tensor3 tau(const Tensor3& t) {
  Tensor3 r(t.ctx());
  for (const auto& [k, c] : t.terms()) r.add_term(c, k[1], k[2], k[0]);
  return r;
}

AlgebraElement mu(const Tensor2& t) {
  AlgebraElement r(t.ctx());
  for (const auto& [k, c] : t.terms()) r.add_term(c, concat(k[0], k[1]));
  return r;
}

void CyclicElement::add_class(const Rational& c, const Word& reduced_word) {
  if (c == 0) return;
  Word key = minimal_rotation(cyclically_reduce(reduced_word));
  Rational& slot = terms_[key];
  slot += c;
  if (slot == 0) terms_.erase(key);
}

CyclicElement CyclicElement::operator+(const CyclicElement& o) const {
  require_same_ctx(ctx_, o.ctx_);
  CyclicElement r = *this;
  for (const auto& [w, c] : o.terms_) {
    Rational& slot = r.terms_[w];
    slot += c;
    if (slot == 0) r.terms_.erase(w);
  }
  return r;
}

CyclicElement CyclicElement::operator-(const CyclicElement& o) const {
  CyclicElement r = *this;
  for (const auto& [w, c] : o.terms_) {
    Rational& slot = r.terms_[w];
    slot -= c;
    if (slot == 0) r.terms_.erase(w);
  }
  return r;
}

CyclicElement abelianize(const AlgebraElement& x) {
  CyclicElement r(x.ctx());
  for (const auto& [w, c] : x.terms()) r.add_class(c, w);
  return r;
}

namespace {

// Image of one letter under a symmetry: (letters, fiber-power).
std::pair<Letter, bool> map_letter(const SurfaceSymmetry& f, Letter l) {
  SignedEdge img = f.edge_map[l.edge];
  Letter out{img.edge, static_cast<int8_t>(img.sign > 0 ? l.exp : -l.exp)};
  return {out, img.sign < 0};
}

}  // namespace

AlgebraElement apply_symmetry(const SurfaceSymmetry& f,
                              const AlgebraElement& x, const Ctx& dst) {
  AlgebraElement r(dst);
  for (const auto& [w, c] : x.terms()) {
    Rational coeff = c;
    Word img;
    for (const Letter& l : w) {
      auto [ml, reversed] = map_letter(f, l);
      img.push_back(ml);
      if (reversed) coeff *= dst->fiber_scalar();
    }
    r.add_term(coeff, img);
  }
  return r;
}

Tensor2 apply_symmetry(const SurfaceSymmetry& f, const Tensor2& t,
                       const Ctx& dst) {
  Tensor2 r(dst);
  for (const auto& [k, c] : t.terms()) {
    Rational coeff = c;
    std::array<Word, 2> img;
    for (int slot = 0; slot < 2; ++slot)
      for (const Letter& l : k[slot]) {
        auto [ml, reversed] = map_letter(f, l);
        img[slot].push_back(ml);
        if (reversed) coeff *= dst->fiber_scalar();
      }
    r.add_term(coeff, img[0], img[1]);
  }
  return r;
}

}  // namespace surfalg
