#pragma once

#include <string>
#include <string_view>

#include "bphz/lincomb.hpp"
#include "bphz/structure.hpp"

namespace bphz {

/// Text grammar for symbols:
///
///   expr    := ['-'] term (('+' | '-') term)*
///   term    := product ('.' product)*        forest product
///   product := power ('*' power)*            tree product
///   power   := atom ('^' INT)?
///   atom    := NUMBER ['/' NUMBER] | 'Xi_' INT | 'I' ['(' expr ')'] | '(' expr ')'
///
/// Numbers are scalars; `I` alone is the bare integration symbol.
///
/// Strict parsing rejects noise indices above d (ParseError) and forests
/// whose components are not in the symbol set (DomainError).
LinComb<Rational> parse_symbol(std::string_view text, const StructureSpec& spec);

/// Accepts every typed tree the grammar can spell. Noise indices must be >= 1.
LinComb<Rational> parse_symbol_lenient(std::string_view text);

std::string format_tree(const TypedTree& t);
std::string format_forest(const Forest& f);
std::string format_symbol(const LinComb<Rational>& x);
/// Terms `c*L (x) R` joined by " + " / " - ".
std::string format_pairs(const PairComb<Rational>& x);

/// `(c)*forest` terms joined by " + ", for coefficients without a compact
/// text form.
template <class Scalar, class CoeffText>
std::string format_symbol_with(const LinComb<Scalar>& x, CoeffText&& coeff_text) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [k, t] : x) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff_text(t.coefficient) + ")*" + format_forest(t.forest);
  }
  return out;
}

}  // namespace bphz
