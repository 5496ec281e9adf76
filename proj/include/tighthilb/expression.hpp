#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tighthilb/lexer.hpp"
#include "tighthilb/polynomial.hpp"

namespace tighthilb::dsl {

/// coeff * f1^e1 * f2^e2 * ... as written in source.
struct TermExpr {
  std::int64_t coeff = 1;
  std::vector<std::pair<std::string, unsigned>> factors;
  Span span;

  friend bool operator==(const TermExpr& a, const TermExpr& b) {
    return a.coeff == b.coeff && a.factors == b.factors;
  }
};

/// Polynomial expression in expanded form: `3*x^2*y - z + 1`.
struct PolyExpr {
  std::vector<TermExpr> terms;
  Span span;

  friend bool operator==(const PolyExpr& a, const PolyExpr& b) { return a.terms == b.terms; }
};

inline std::int64_t parse_integer(const Token& t) {
  std::int64_t v = 0;
  for (char c : t.text) {
    if (v > (std::numeric_limits<std::int64_t>::max() - (c - '0')) / 10) {
      throw SourceError(ErrorCode::SyntaxError, "integer literal too large", t.span);
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

inline TermExpr parse_term(Lexer& lex) {
  TermExpr term;
  term.span = lex.peek().span;
  bool first = true;
  while (first || lex.peek().is("*")) {
    if (!first) lex.next();
    first = false;
    Token t = lex.next();
    if (t.kind == TokenKind::Integer) {
      std::int64_t v = parse_integer(t);
      if (v != 0 && (term.coeff > std::numeric_limits<std::int64_t>::max() / v ||
                     term.coeff < -std::numeric_limits<std::int64_t>::max() / v)) {
        throw SourceError(ErrorCode::SyntaxError, "coefficient too large", t.span);
      }
      term.coeff *= v;
    } else if (t.kind == TokenKind::Identifier) {
      unsigned e = 1;
      if (lex.peek().is("^")) {
        lex.next();
        Token et = lex.next();
        if (et.kind != TokenKind::Integer) throw SourceError(ErrorCode::SyntaxError, "expected exponent", et.span);
        std::int64_t v = parse_integer(et);
        if (v > 0xFFFF) throw SourceError(ErrorCode::SyntaxError, "exponent too large", et.span);
        e = static_cast<unsigned>(v);
      }
      term.factors.emplace_back(t.text, e);
    } else {
      throw SourceError(ErrorCode::SyntaxError, "expected a number or variable, found '" + t.text + "'", t.span);
    }
  }
  return term;
}

inline PolyExpr parse_expression(Lexer& lex) {
  PolyExpr expr;
  expr.span = lex.peek().span;
  bool negative = false;
  if (lex.peek().is("-") || lex.peek().is("+")) negative = lex.next().text == "-";
  while (true) {
    TermExpr t = parse_term(lex);
    if (negative) t.coeff = -t.coeff;
    expr.terms.push_back(std::move(t));
    if (lex.peek().is("+") || lex.peek().is("-")) {
      negative = lex.next().text == "-";
    } else {
      break;
    }
  }
  return expr;
}

inline std::string print(const TermExpr& t, bool leading) {
  std::string out;
  const bool negative = t.coeff < 0;
  const std::uint64_t magnitude = negative ? static_cast<std::uint64_t>(-(t.coeff + 1)) + 1 : static_cast<std::uint64_t>(t.coeff);
  if (leading) {
    if (negative) out += '-';
  } else {
    out += negative ? " - " : " + ";
  }
  if (magnitude != 1 || t.factors.empty()) {
    out += std::to_string(magnitude);
    if (!t.factors.empty()) out += '*';
  }
  for (std::size_t i = 0; i < t.factors.size(); ++i) {
    if (i > 0) out += '*';
    out += t.factors[i].first;
    if (t.factors[i].second != 1) out += '^' + std::to_string(t.factors[i].second);
  }
  return out;
}

inline std::string print(const PolyExpr& e) {
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) out += print(e.terms[i], i == 0);
  return out;
}

/// Evaluates in a ring; unknown names raise UndefinedIdentifier at the term.
inline Polynomial evaluate(const PolyExpr& expr, const RingPtr& ring) {
  std::vector<Term> terms;
  const auto& k = ring->field();
  for (const auto& t : expr.terms) {
    Monomial m(ring->arity());
    for (const auto& [name, e] : t.factors) {
      auto index = ring->index_of(name);
      if (!index) throw SourceError(ErrorCode::UndefinedIdentifier, "undefined identifier '" + name + "'", t.span);
      std::uint64_t total = std::uint64_t{m[*index]} + e;
      if (total > Monomial::kMaxExponent) throw SourceError(ErrorCode::SyntaxError, "exponent too large", t.span);
      m.set(*index, static_cast<unsigned>(total));
    }
    terms.push_back({k.reduce(t.coeff), m});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace tighthilb::dsl

namespace tighthilb {

/// Parses the shared polynomial grammar against a ring's variable names.
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text) {
  dsl::Lexer lex(text);
  dsl::PolyExpr expr = dsl::parse_expression(lex);
  if (lex.peek().kind != dsl::TokenKind::End) {
    throw dsl::SourceError(ErrorCode::SyntaxError, "trailing input '" + lex.peek().text + "'", lex.peek().span);
  }
  return dsl::evaluate(expr, ring);
}

}  // namespace tighthilb
