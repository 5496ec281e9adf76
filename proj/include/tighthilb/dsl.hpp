#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tighthilb/expression.hpp"
#include "tighthilb/ring.hpp"

namespace tighthilb::dsl {

struct RingDef {
  enum class Kind { Poly, MonomialSubring };
  Kind kind = Kind::Poly;
  std::string name;
  std::int64_t characteristic = 0;
  std::vector<std::string> variables;       // poly variables, or subring source variables
  std::vector<PolyExpr> relations;          // Poly: defining ideal
  bool has_quotient = false;                // Poly: "/ ideal(...)" present
  std::vector<PolyExpr> generators;         // MonomialSubring: monomials in the source variables
  std::vector<std::string> target_names;    // MonomialSubring: optional names of the generators
  Span span;
  Span field_span;

  friend bool operator==(const RingDef& a, const RingDef& b) {
    return a.kind == b.kind && a.name == b.name && a.characteristic == b.characteristic && a.variables == b.variables &&
           a.relations == b.relations && a.has_quotient == b.has_quotient && a.generators == b.generators &&
           a.target_names == b.target_names;
  }
};

struct IdealDef {
  std::string name;
  std::vector<PolyExpr> generators;
  std::string ring;
  Span span;
  Span ring_span;

  friend bool operator==(const IdealDef& a, const IdealDef& b) {
    return a.name == b.name && a.generators == b.generators && a.ring == b.ring;
  }
};

struct MapDef {
  std::string name;
  std::string source;
  std::string target;
  std::vector<PolyExpr> images;
  Span span;
  Span source_span;
  Span target_span;

  friend bool operator==(const MapDef& a, const MapDef& b) {
    return a.name == b.name && a.source == b.source && a.target == b.target && a.images == b.images;
  }
};

struct Assertion {
  enum class Kind { StandardSop, TestElementGenerators, AssPrimes };
  Kind kind = Kind::StandardSop;
  std::string subject;
  std::vector<std::string> primes;
  Span span;
  Span subject_span;
  std::vector<Span> prime_spans;

  friend bool operator==(const Assertion& a, const Assertion& b) {
    return a.kind == b.kind && a.subject == b.subject && a.primes == b.primes;
  }
};

struct AnalyzeCmd {
  std::string ideal;
  std::optional<std::int64_t> depth;
  std::optional<std::int64_t> e_max;
  std::optional<std::int64_t> window;
  std::optional<PolyExpr> test_element;
  bool jacobian = false;
  std::optional<std::string> out;
  std::optional<std::string> csv;
  std::optional<std::string> extension;
  Span span;
  Span ideal_span;
  Span extension_span;
  Span test_element_span;

  friend bool operator==(const AnalyzeCmd& a, const AnalyzeCmd& b) {
    return a.ideal == b.ideal && a.depth == b.depth && a.e_max == b.e_max && a.window == b.window &&
           a.test_element == b.test_element && a.jacobian == b.jacobian && a.out == b.out && a.csv == b.csv &&
           a.extension == b.extension;
  }
};

using Statement = std::variant<RingDef, IdealDef, MapDef, Assertion, AnalyzeCmd>;

struct Script {
  std::vector<Statement> statements;
  friend bool operator==(const Script&, const Script&) = default;
};

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view source) : lex_(source) {}

  Script parse() {
    Script script;
    while (lex_.peek().kind != TokenKind::End) script.statements.push_back(statement());
    return script;
  }

 private:
  [[noreturn]] void fail(const std::string& message, Span span) { throw SourceError(ErrorCode::SyntaxError, message, span); }

  std::string describe(const Token& t) { return t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'"; }

  Token expect_punct(std::string_view p) {
    Token t = lex_.next();
    if (!t.is(p)) fail("expected '" + std::string(p) + "', found " + describe(t), t.span);
    return t;
  }

  Token expect_identifier(const char* what) {
    Token t = lex_.next();
    if (t.kind != TokenKind::Identifier) fail(std::string("expected ") + what + ", found " + describe(t), t.span);
    return t;
  }

  void expect_keyword(std::string_view word) {
    Token t = lex_.next();
    if (t.kind != TokenKind::Identifier || t.text != word) {
      fail("expected '" + std::string(word) + "', found " + describe(t), t.span);
    }
  }

  std::int64_t expect_integer() {
    Token t = lex_.next();
    if (t.kind != TokenKind::Integer) fail("expected an integer, found " + describe(t), t.span);
    return parse_integer(t);
  }

  std::vector<std::string> name_list(std::vector<Span>* spans = nullptr) {
    expect_punct("[");
    std::vector<std::string> names;
    if (!lex_.peek().is("]")) {
      do {
        Token t = expect_identifier("a name");
        names.push_back(t.text);
        if (spans) spans->push_back(t.span);
      } while (lex_.peek().is(",") && (lex_.next(), true));
    }
    expect_punct("]");
    return names;
  }

  std::vector<PolyExpr> poly_list(std::string_view close) {
    std::vector<PolyExpr> out;
    if (!lex_.peek().is(close)) {
      do {
        out.push_back(parse_expression(lex_));
      } while (lex_.peek().is(",") && (lex_.next(), true));
    }
    expect_punct(close);
    return out;
  }

  std::int64_t field(Span& span) {
    Token t = expect_identifier("a field F<p>");
    span = t.span;
    if (t.text.size() < 2 || t.text[0] != 'F' ||
        !std::all_of(t.text.begin() + 1, t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      fail("expected a field F<p>, found '" + t.text + "'", t.span);
    }
    Token digits{TokenKind::Integer, t.text.substr(1), t.span};
    return parse_integer(digits);
  }

  Statement statement() {
    Token head = lex_.next();
    if (head.kind != TokenKind::Identifier) fail("expected a statement, found " + describe(head), head.span);
    if (head.text == "ring") return ring_def(head.span);
    if (head.text == "ideal") return ideal_def(head.span);
    if (head.text == "map") return map_def(head.span);
    if (head.text == "assert") return assertion(head.span);
    if (head.text == "analyze") return analyze(head.span);
    fail("unknown statement '" + head.text + "'", head.span);
  }

  RingDef ring_def(Span span) {
    RingDef r;
    r.span = span;
    r.name = expect_identifier("a ring name").text;
    expect_punct("=");
    Token kind = expect_identifier("poly or monomial_subring");
    expect_punct("(");
    r.characteristic = field(r.field_span);
    expect_punct(",");
    r.variables = name_list();
    if (kind.text == "poly") {
      r.kind = RingDef::Kind::Poly;
      expect_punct(")");
      if (lex_.peek().is("/")) {
        lex_.next();
        r.has_quotient = true;
        expect_keyword("ideal");
        expect_punct("(");
        r.relations = poly_list(")");
      }
    } else if (kind.text == "monomial_subring") {
      r.kind = RingDef::Kind::MonomialSubring;
      expect_punct(",");
      expect_punct("[");
      r.generators = poly_list("]");
      if (lex_.peek().is(",")) {
        lex_.next();
        r.target_names = name_list();
      }
      expect_punct(")");
    } else {
      fail("expected poly or monomial_subring, found '" + kind.text + "'", kind.span);
    }
    expect_punct(";");
    return r;
  }

  IdealDef ideal_def(Span span) {
    IdealDef d;
    d.span = span;
    d.name = expect_identifier("an ideal name").text;
    expect_punct("=");
    expect_punct("(");
    d.generators = poly_list(")");
    expect_keyword("in");
    Token ring = expect_identifier("a ring name");
    d.ring = ring.text;
    d.ring_span = ring.span;
    expect_punct(";");
    return d;
  }

  MapDef map_def(Span span) {
    MapDef m;
    m.span = span;
    m.name = expect_identifier("a map name").text;
    expect_punct(":");
    Token src = expect_identifier("a source ring");
    expect_punct("->");
    Token tgt = expect_identifier("a target ring");
    m.source = src.text;
    m.source_span = src.span;
    m.target = tgt.text;
    m.target_span = tgt.span;
    expect_punct("=");
    expect_punct("[");
    m.images = poly_list("]");
    expect_punct(";");
    return m;
  }

  Assertion assertion(Span span) {
    Assertion a;
    a.span = span;
    Token kind = expect_identifier("an assertion");
    Token subject = expect_identifier("a name");
    a.subject = subject.text;
    a.subject_span = subject.span;
    if (kind.text == "standard_sop") {
      a.kind = Assertion::Kind::StandardSop;
    } else if (kind.text == "test_element_generators") {
      a.kind = Assertion::Kind::TestElementGenerators;
    } else if (kind.text == "ass_primes") {
      a.kind = Assertion::Kind::AssPrimes;
      expect_punct("=");
      a.primes = name_list(&a.prime_spans);
    } else {
      fail("unknown assertion '" + kind.text + "'", kind.span);
    }
    expect_punct(";");
    return a;
  }

  AnalyzeCmd analyze(Span span) {
    AnalyzeCmd c;
    c.span = span;
    Token ideal = expect_identifier("an ideal name");
    c.ideal = ideal.text;
    c.ideal_span = ideal.span;
    while (lex_.peek().kind == TokenKind::Option) {
      Token opt = lex_.next();
      if (opt.text == "depth") {
        c.depth = expect_integer();
      } else if (opt.text == "emax") {
        c.e_max = expect_integer();
      } else if (opt.text == "window") {
        c.window = expect_integer();
      } else if (opt.text == "test-element") {
        c.test_element_span = lex_.peek().span;
        if (lex_.peek().kind == TokenKind::Identifier && lex_.peek().text == "jacobian") {
          lex_.next();
          c.jacobian = true;
          c.test_element.reset();
        } else {
          c.jacobian = false;
          c.test_element = parse_expression(lex_);
        }
      } else if (opt.text == "out") {
        c.out = lex_.next_word().text;
      } else if (opt.text == "csv") {
        c.csv = lex_.next_word().text;
      } else if (opt.text == "extension") {
        Token ext = expect_identifier("a map name");
        c.extension = ext.text;
        c.extension_span = ext.span;
      } else {
        fail("unknown option '--" + opt.text + "'", opt.span);
      }
    }
    expect_punct(";");
    return c;
  }

  Lexer lex_;
};

inline Script parse(std::string_view source) { return Parser(source).parse(); }

// ---------------------------------------------------------------------------
// Printer

namespace detail {

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
  return out + "]";
}

inline std::string join_polys(const std::vector<PolyExpr>& polys) {
  std::string out;
  for (std::size_t i = 0; i < polys.size(); ++i) out += (i ? ", " : "") + print(polys[i]);
  return out;
}

inline std::string quote_path(const std::string& path) {
  const bool plain = !path.empty() && std::none_of(path.begin(), path.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ';' || c == '"';
  });
  return plain ? path : "\"" + path + "\"";
}

}  // namespace detail

inline std::string print(const Statement& s) {
  struct Visitor {
    std::string operator()(const RingDef& r) const {
      std::string f = "F" + std::to_string(r.characteristic);
      if (r.kind == RingDef::Kind::Poly) {
        std::string out = "ring " + r.name + " = poly(" + f + ", " + detail::join_names(r.variables) + ")";
        if (r.has_quotient) out += " / ideal(" + detail::join_polys(r.relations) + ")";
        return out + ";";
      }
      std::string out = "ring " + r.name + " = monomial_subring(" + f + ", " + detail::join_names(r.variables) + ", [" +
                        detail::join_polys(r.generators) + "]";
      if (!r.target_names.empty()) out += ", " + detail::join_names(r.target_names);
      return out + ");";
    }
    std::string operator()(const IdealDef& d) const {
      return "ideal " + d.name + " = (" + detail::join_polys(d.generators) + ") in " + d.ring + ";";
    }
    std::string operator()(const MapDef& m) const {
      return "map " + m.name + " : " + m.source + " -> " + m.target + " = [" + detail::join_polys(m.images) + "];";
    }
    std::string operator()(const Assertion& a) const {
      switch (a.kind) {
        case Assertion::Kind::StandardSop: return "assert standard_sop " + a.subject + ";";
        case Assertion::Kind::TestElementGenerators: return "assert test_element_generators " + a.subject + ";";
        case Assertion::Kind::AssPrimes: return "assert ass_primes " + a.subject + " = " + detail::join_names(a.primes) + ";";
      }
      return "";
    }
    std::string operator()(const AnalyzeCmd& c) const {
      std::string out = "analyze " + c.ideal;
      if (c.depth) out += " --depth " + std::to_string(*c.depth);
      if (c.e_max) out += " --emax " + std::to_string(*c.e_max);
      if (c.window) out += " --window " + std::to_string(*c.window);
      if (c.jacobian) out += " --test-element jacobian";
      if (c.test_element) out += " --test-element " + tighthilb::dsl::print(*c.test_element);
      if (c.extension) out += " --extension " + *c.extension;
      if (c.out) out += " --out " + detail::quote_path(*c.out);
      if (c.csv) out += " --csv " + detail::quote_path(*c.csv);
      return out + ";";
    }
  };
  return std::visit(Visitor{}, s);
}

inline std::string print(const Script& script) {
  std::string out;
  for (const auto& s : script.statements) out += print(s) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Semantic resolution

struct Environment {
  std::optional<std::int64_t> characteristic;
  std::map<std::string, PresentedRingPtr> rings;
  std::map<std::string, std::pair<RingIdeal, std::string>> ideals;  // ideal, ring name
  std::map<std::string, RingMap> maps;
  std::map<std::string, std::string> kinds;                         // name -> "ring" / "ideal" / "map"
};

namespace detail {

inline Polynomial evaluate_in(const PolyExpr& e, const PresentedRingPtr& ring) { return evaluate(e, ring->ambient()); }

inline void declare(Environment& env, const std::string& name, const char* kind, Span span) {
  if (env.kinds.count(name)) throw SourceError(ErrorCode::DomainError, "'" + name + "' is already defined", span);
  env.kinds[name] = kind;
}

inline const PresentedRingPtr& lookup_ring(const Environment& env, const std::string& name, Span span) {
  auto it = env.rings.find(name);
  if (it == env.rings.end()) throw SourceError(ErrorCode::UndefinedIdentifier, "undefined ring '" + name + "'", span);
  return it->second;
}

inline PrimeField make_field(std::int64_t p, Span span) {
  try {
    if (p < 2) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    return PrimeField(static_cast<std::uint64_t>(p));
  } catch (const SourceError&) {
    throw;
  } catch (const Error& e) {
    throw SourceError(e.code(), e.what(), span);
  }
}

template <typename F>
auto located(Span span, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SourceError&) {
    throw;
  } catch (const Error& e) {
    throw SourceError(e.code(), e.what(), span);
  }
}

}  // namespace detail

inline void resolve(Environment& env, const RingDef& r) {
  if (env.characteristic && *env.characteristic != r.characteristic) {
    throw SourceError(ErrorCode::CharacteristicMismatch,
                      "field F" + std::to_string(r.characteristic) + " differs from the script's F" +
                          std::to_string(*env.characteristic),
                      r.field_span);
  }
  PrimeField k = detail::make_field(r.characteristic, r.field_span);
  env.characteristic = r.characteristic;
  detail::declare(env, r.name, "ring", r.span);
  if (r.kind == RingDef::Kind::Poly) {
    auto ambient = detail::located(r.span, [&] { return PolyRing::create(k, r.variables); });
    std::vector<Polynomial> rel;
    for (const auto& e : r.relations) rel.push_back(evaluate(e, ambient));
    env.rings[r.name] = detail::located(r.span, [&] { return PresentedRing::create(ambient, rel); });
    return;
  }
  auto source = detail::located(r.span, [&] { return PolyRing::create(k, r.variables); });
  std::vector<std::vector<unsigned>> exponents;
  for (const auto& g : r.generators) {
    Polynomial m = evaluate(g, source);
    if (m.terms().size() != 1 || m.lead_coeff() != 1) {
      throw SourceError(ErrorCode::DomainError, "subring generators must be monic monomials", g.span);
    }
    std::vector<unsigned> e;
    for (std::size_t v = 0; v < source->arity(); ++v) e.push_back(m.lead_monomial()[v]);
    exponents.push_back(std::move(e));
  }
  if (!r.target_names.empty() && r.target_names.size() != r.generators.size()) {
    throw SourceError(ErrorCode::ArityError, "one target name per generator required", r.span);
  }
  env.rings[r.name] = detail::located(r.span, [&] { return toric_presentation(k, exponents, r.target_names, r.variables); });
}

inline void resolve(Environment& env, const IdealDef& d) {
  const auto& ring = detail::lookup_ring(env, d.ring, d.ring_span);
  std::vector<Polynomial> gens;
  for (const auto& g : d.generators) gens.push_back(detail::evaluate_in(g, ring));
  detail::declare(env, d.name, "ideal", d.span);
  env.ideals.emplace(d.name, std::make_pair(RingIdeal(ring, std::move(gens)), d.ring));
}

inline void resolve(Environment& env, const MapDef& m) {
  const auto& src = detail::lookup_ring(env, m.source, m.source_span);
  const auto& tgt = detail::lookup_ring(env, m.target, m.target_span);
  std::vector<Polynomial> images;
  for (const auto& h : m.images) images.push_back(detail::evaluate_in(h, tgt));
  detail::declare(env, m.name, "map", m.span);
  env.maps.emplace(m.name, detail::located(m.span, [&] { return RingMap(src, tgt, images); }));
}

inline void resolve(Environment& env, const Assertion& a) {
  if (a.kind == Assertion::Kind::AssPrimes) {
    detail::lookup_ring(env, a.subject, a.subject_span);
    for (std::size_t i = 0; i < a.primes.size(); ++i) {
      auto it = env.ideals.find(a.primes[i]);
      if (it == env.ideals.end()) {
        throw SourceError(ErrorCode::UndefinedIdentifier, "undefined ideal '" + a.primes[i] + "'", a.prime_spans[i]);
      }
      if (it->second.second != a.subject) {
        throw SourceError(ErrorCode::DomainError, "'" + a.primes[i] + "' is not an ideal of " + a.subject, a.prime_spans[i]);
      }
    }
    if (a.primes.size() != 2) throw SourceError(ErrorCode::ArityError, "ass_primes expects two primes", a.subject_span);
    if (env.ideals.at(a.primes[0]).first == env.ideals.at(a.primes[1]).first) {
      throw SourceError(ErrorCode::DomainError, "associated primes must be distinct", a.prime_spans[1]);
    }
    return;
  }
  if (!env.ideals.count(a.subject)) {
    throw SourceError(ErrorCode::UndefinedIdentifier, "undefined ideal '" + a.subject + "'", a.subject_span);
  }
}

inline void resolve(Environment& env, const AnalyzeCmd& c) {
  auto it = env.ideals.find(c.ideal);
  if (it == env.ideals.end()) throw SourceError(ErrorCode::UndefinedIdentifier, "undefined ideal '" + c.ideal + "'", c.ideal_span);
  if (c.test_element) evaluate(*c.test_element, it->second.first.ring()->ambient());
  if (c.extension) {
    auto m = env.maps.find(*c.extension);
    if (m == env.maps.end()) {
      throw SourceError(ErrorCode::UndefinedIdentifier, "undefined map '" + *c.extension + "'", c.extension_span);
    }
    if (m->second.source() != it->second.first.ring()) {
      throw SourceError(ErrorCode::DomainError, "map source is not the ring of " + c.ideal, c.extension_span);
    }
  }
}

/// Builds every ring, ideal and map, checking names and the field.
inline Environment resolve(const Script& script) {
  Environment env;
  for (const auto& s : script.statements) std::visit([&](const auto& st) { resolve(env, st); }, s);
  return env;
}

}  // namespace tighthilb::dsl
