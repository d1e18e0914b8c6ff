#include "format.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace surfalg {

namespace {

std::string letter_name(const Context& ctx, int32_t edge) {
  if (is_symbol(edge)) return "Y" + std::to_string(symbol_index(edge));
  return ctx.surface().edges[edge].name;
}

std::string term_str(const Rational& c, const std::string& word) {
  return rational_to_string(c) + " * " + word;
}

// render yields (sort-key, text); terms are ordered by word text, which is
// unique per term.
template <typename Terms, typename RenderKey>
std::string render_sorted(const Terms& terms, RenderKey&& render) {
  if (terms.empty()) return "0";
  std::vector<std::pair<std::string, std::string>> parts;
  parts.reserve(terms.size());
  for (const auto& [k, c] : terms) parts.push_back(render(k, c));
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i].second;
  }
  return out;
}

}  // namespace

std::string render_word(const Context& ctx, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += letter_name(ctx, w[i].edge);
    out += '^';
    out += std::to_string(static_cast<int>(w[i].exp));
  }
  return out;
}

std::string render_element(const AlgebraElement& x) {
  const Context& ctx = *x.ctx();
  return render_sorted(x.terms(),
                       [&](const Word& w, const Rational& c)
                           -> std::pair<std::string, std::string> {
                         std::string ws = render_word(ctx, w);
                         return {ws, term_str(c, ws)};
                       });
}

std::string render_tensor2(const Tensor2& t) {
  const Context& ctx = *t.ctx();
  return render_sorted(
      t.terms(),
      [&](const std::array<Word, 2>& k, const Rational& c)
          -> std::pair<std::string, std::string> {
        std::string w1 = render_word(ctx, k[0]), w2 = render_word(ctx, k[1]);
        return {w1 + " | " + w2,
                "(" + term_str(c, w1) + ") (x) (" +
                    term_str(Rational(1), w2) + ")"};
      });
}

std::string render_tensor3(const Tensor3& t) {
  const Context& ctx = *t.ctx();
  return render_sorted(
      t.terms(),
      [&](const std::array<Word, 3>& k, const Rational& c)
          -> std::pair<std::string, std::string> {
        std::string w1 = render_word(ctx, k[0]), w2 = render_word(ctx, k[1]),
                    w3 = render_word(ctx, k[2]);
        return {w1 + " | " + w2 + " | " + w3,
                "(" + term_str(c, w1) + ") (x) (" + term_str(Rational(1), w2) +
                    ") (x) (" + term_str(Rational(1), w3) + ")"};
      });
}

std::string render_cyclic(const CyclicElement& x) {
  const Context& ctx = *x.ctx();
  return render_sorted(x.terms(),
                       [&](const Word& w, const Rational& c)
                           -> std::pair<std::string, std::string> {
                         std::string ws = render_word(ctx, w);
                         return {ws, rational_to_string(c) + " * [" + ws + "]"};
                       });
}

namespace {

struct Tokenizer {
  std::vector<std::string> toks;
  size_t pos = 0;

  explicit Tokenizer(const std::string& text) {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    };
    for (char ch : text) {
      if (isspace(static_cast<unsigned char>(ch))) {
        flush();
      } else if (ch == '(' || ch == ')' || ch == '*' || ch == '+') {
        flush();
        toks.push_back(std::string(1, ch));
      } else {
        cur += ch;
      }
    }
    flush();
  }

  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : toks[pos];
  }
  std::string next() {
    if (done()) throw SurfError("parse", "unexpected end of element literal");
    return toks[pos++];
  }
  void expect(const std::string& t) {
    if (next() != t) throw SurfError("parse", "expected '" + t + "'");
  }
};

bool looks_like_rational(const std::string& t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i >= t.size()) return false;
  for (; i < t.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(t[i])) && t[i] != '/') return false;
  return true;
}

Letter parse_letter(const Context& ctx, const std::string& tok) {
  std::string name = tok;
  int exp = 1;
  if (auto caret = tok.find('^'); caret != std::string::npos) {
    name = tok.substr(0, caret);
    try {
      exp = std::stoi(tok.substr(caret + 1));
    } catch (const std::exception&) {
      throw SurfError("parse", "bad exponent in " + tok);
    }
    if (exp != 1 && exp != -1)
      throw SurfError("parse", "exponent must be 1 or -1 in " + tok);
  }
  int e = ctx.surface().edge_index(name);
  if (e < 0) throw SurfError("parse", "unknown generator " + name);
  return Letter{e, static_cast<int8_t>(exp)};
}

// term := [rational '*'] word ; word := '1' | letter+
std::pair<Rational, Word> parse_term(const Context& ctx, Tokenizer& tz) {
  Rational coeff(1);
  if (looks_like_rational(tz.peek()) && tz.peek() != "1") {
    coeff = rational_from_string(tz.next());
    tz.expect("*");
  } else if (tz.peek() == "1") {
    // bare "1": unit word unless followed by '*' (then it was a coefficient)
    std::string one = tz.next();
    if (tz.peek() == "*") {
      tz.next();
    } else {
      return {coeff, Word{}};
    }
  }
  Word w;
  if (tz.peek() == "1") {
    tz.next();
    return {coeff, w};
  }
  while (!tz.done() && tz.peek() != "+" && tz.peek() != ")" &&
         tz.peek() != "(") {
    w.push_back(parse_letter(ctx, tz.next()));
  }
  if (w.empty()) throw SurfError("parse", "empty word in element literal");
  return {coeff, w};
}

}  // namespace

AlgebraElement parse_element(const Ctx& ctx, const std::string& text) {
  Tokenizer tz(text);
  AlgebraElement out(ctx);
  if (tz.peek() == "0") {
    tz.next();
    if (!tz.done()) throw SurfError("parse", "trailing tokens after 0");
    return out;
  }
  while (true) {
    auto [c, w] = parse_term(*ctx, tz);
    out.add_term(c, w);
    if (tz.done()) break;
    tz.expect("+");
  }
  return out;
}

Tensor2 parse_tensor2(const Ctx& ctx, const std::string& text) {
  Tokenizer tz(text);
  Tensor2 out(ctx);
  if (tz.peek() == "0") {
    tz.next();
    return out;
  }
  while (true) {
    tz.expect("(");
    auto [c1, w1] = parse_term(*ctx, tz);
    tz.expect(")");
    if (tz.next() != "(" || tz.next() != "x" || tz.next() != ")")
      throw SurfError("parse", "expected (x) between tensor slots");
    tz.expect("(");
    auto [c2, w2] = parse_term(*ctx, tz);
    tz.expect(")");
    out.add_term(c1 * c2, w1, w2);
    if (tz.done()) break;
    tz.expect("+");
  }
  return out;
}

}  // namespace surfalg
