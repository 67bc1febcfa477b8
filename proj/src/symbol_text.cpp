#include "bphz/symbol_text.hpp"

#include <cctype>
#include <map>

#include "bphz/errors.hpp"
#include "bphz/symbols.hpp"

namespace bphz {

namespace {

using Comb = LinComb<Rational>;

class Parser {
 public:
  Parser(std::string_view text, int max_noise) : text_(text), max_noise_(max_noise) {}

  Comb parse() {
    Comb x = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  std::string digits() {
    std::size_t start = pos_;
    while (at_digit()) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long long integer() {
    skip_space();
    if (!at_digit()) fail("expected an integer");
    std::string s = digits();
    if (s.size() > 9) fail("integer too large");
    return std::stoll(s);
  }

  Comb expr() {
    skip_space();
    bool negate = accept('-');
    Comb x = term();
    if (negate) x *= Rational(-1);
    for (;;) {
      if (accept('+')) {
        x += term();
      } else if (accept('-')) {
        x -= term();
      } else {
        return x;
      }
    }
  }

  Comb term() {
    Comb x = product();
    while (accept('.')) x = forest_product(x, product());
    return x;
  }

  Comb product() {
    Comb x = power();
    while (accept('*')) {
      std::size_t at = pos_;
      Comb y = power();
      x = tree_product_at(x, y, at);
    }
    return x;
  }

  Comb tree_product_at(const Comb& a, const Comb& b, std::size_t at) {
    try {
      return tree_product(a, b);
    } catch (const DomainError&) {
      throw ParseError(at, "tree product of a multi-tree forest");
    }
  }

  Comb power() {
    Comb base = atom();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    long long n = integer();
    if (n < 0) fail("negative exponent");
    Comb out(Forest{}, Rational(1));
    for (long long k = 0; k < n; ++k) out = tree_product_at(out, base, at);
    return out;
  }

  Comb atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Comb(Forest{}, number());
    if (c == '(') {
      ++pos_;
      Comb x = expr();
      if (!accept(')')) fail("expected ')'");
      return x;
    }
    if (text_.substr(pos_, 3) == "Xi_") {
      const std::size_t at = pos_;
      pos_ += 3;
      if (!at_digit()) fail("expected a noise index after 'Xi_'");
      long long i = integer();
      if (i < 1) throw ParseError(at, "noise index must be at least 1");
      if (max_noise_ > 0 && i > max_noise_)
        throw ParseError(at, "unknown noise index " + std::to_string(i) + " (d = " + std::to_string(max_noise_) + ")");
      return Comb(sym::xi(static_cast<int>(i)));
    }
    if (c == 'I') {
      ++pos_;
      if (!accept('(')) return Comb(sym::integ());
      const std::size_t at = pos_;
      Comb inner = expr();
      if (!accept(')')) fail("expected ')'");
      Comb out;
      for (const auto& [k, t] : inner) {
        if (!t.forest.is_tree()) throw ParseError(at, "I applied to a multi-tree forest");
        out.add(Forest(sym::integ_of(t.forest.as_tree())), t.coefficient);
      }
      return out;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    std::string s = digits();
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      s += "." + digits();
    }
    Rational q = parse_rational(s);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_space();
      if (!at_digit()) fail("expected a denominator");
      Rational den = parse_rational(digits());
      if (den == 0) fail("zero denominator");
      q /= den;
    }
    return q;
  }

  std::string_view text_;
  int max_noise_;
  std::size_t pos_ = 0;
};

std::string power_text(const std::string& base, int count) {
  return count == 1 ? base : base + "^" + std::to_string(count);
}

std::string branch_text(const TypedTree& branch) {
  const int top = branch.children(0).front();
  const EdgeType type = branch.edge_type(top);
  const TypedTree below = branch.subtree(top);
  if (type.is_noise()) {
    if (!below.is_unit()) throw DomainError("noise edge with children has no text form");
    return "Xi_" + std::to_string(type.noise);
  }
  if (below.is_unit()) return "I";
  return "I(" + format_tree(below) + ")";
}

}  // namespace

LinComb<Rational> parse_symbol(std::string_view text, const StructureSpec& spec) {
  Comb x = Parser(text, spec.d()).parse();
  for (const auto& [k, t] : x)
    if (!spec.in_minus_set(t.forest))
      throw DomainError("'" + format_forest(t.forest) + "' is not a product of symbols from the symbol set");
  return x;
}

LinComb<Rational> parse_symbol_lenient(std::string_view text) { return Parser(text, 0).parse(); }

std::string format_tree(const TypedTree& t) {
  if (t.is_unit()) return "1";
  // Group equal branches; noises first, then bare I, then the rest.
  std::map<std::pair<int, std::string>, std::pair<std::string, int>> groups;
  for (const auto& b : t.root_branches()) {
    const int top = b.children(0).front();
    const EdgeType type = b.edge_type(top);
    int rank = 2;
    if (type.is_noise())
      rank = 0;
    else if (b.children(top).empty())
      rank = 1;
    std::string order = type.is_noise() ? std::string(10 - std::to_string(type.noise).size(), '0') +
                                              std::to_string(type.noise)
                                        : b.key();
    auto& slot = groups[{rank, order}];
    if (slot.second == 0) slot.first = branch_text(b);
    ++slot.second;
  }
  std::string out;
  for (const auto& [k, g] : groups) {
    if (!out.empty()) out += "*";
    out += power_text(g.first, g.second);
  }
  return out;
}

std::string format_forest(const Forest& f) {
  if (f.is_unit()) return "1";
  std::string out;
  for (const auto& t : f.trees()) {
    if (!out.empty()) out += " . ";
    out += format_tree(t);
  }
  return out;
}

namespace {

/// Appends `c*body` with a sign-aware joiner.
void append_term(std::string& out, const Rational& c, const std::string& body, bool body_is_unit) {
  const bool negative = c < 0;
  const Rational mag = negative ? Rational(-c) : c;
  if (out.empty())
    out += negative ? "-" : "";
  else
    out += negative ? " - " : " + ";
  if (body_is_unit) {
    out += to_string(mag);
  } else if (mag == 1) {
    out += body;
  } else {
    out += to_string(mag) + "*" + body;
  }
}

}  // namespace

std::string format_symbol(const LinComb<Rational>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, t] : x) append_term(out, t.coefficient, format_forest(t.forest), t.forest.is_unit());
  return out;
}

std::string format_pairs(const PairComb<Rational>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, t] : x)
    append_term(out, t.coefficient, format_forest(t.left) + " (x) " + format_forest(t.right), false);
  return out;
}

}  // namespace bphz
