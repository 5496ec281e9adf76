#include <random>

#include "gtest/gtest.h"

#include "tighthilb/dsl.hpp"

using namespace tighthilb;
using namespace tighthilb::dsl;

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool coin() { return pick(2) == 1; }

  std::string name() {
    static const char* pool[] = {"x", "y", "z", "w", "a", "b", "c", "Q", "P1", "S_2", "phi", "t0"};
    return pool[pick(12)];
  }

  std::vector<std::string> names(int lo, int hi) {
    std::vector<std::string> out(static_cast<std::size_t>(lo + pick(hi - lo + 1)));
    for (auto& s : out) s = name();
    return out;
  }

  TermExpr term() {
    TermExpr t;
    t.coeff = (coin() ? 1 : -1) * (1 + pick(12));
    const int k = pick(3);
    for (int i = 0; i < k; ++i) t.factors.emplace_back(name(), 1 + static_cast<unsigned>(pick(4)));
    return t;
  }

  PolyExpr poly() {
    PolyExpr e;
    const int k = 1 + pick(3);
    for (int i = 0; i < k; ++i) e.terms.push_back(term());
    return e;
  }

  std::vector<PolyExpr> polys(int lo, int hi) {
    std::vector<PolyExpr> out(static_cast<std::size_t>(lo + pick(hi - lo + 1)));
    for (auto& p : out) p = poly();
    return out;
  }

  std::string path() {
    static const char* pool[] = {"out.json", "dir/report.json", "with space.json", "a-b_c", "x;y"};
    return pool[pick(5)];
  }

  Statement statement() {
    switch (pick(5)) {
      case 0: {
        RingDef r;
        r.name = name();
        r.characteristic = 2 + pick(30);
        r.variables = names(1, 4);
        if (coin()) {
          r.kind = RingDef::Kind::Poly;
          r.has_quotient = coin();
          if (r.has_quotient) r.relations = polys(1, 3);
        } else {
          r.kind = RingDef::Kind::MonomialSubring;
          r.generators = polys(1, 3);
          if (coin()) r.target_names = names(1, 3);
        }
        return r;
      }
      case 1: {
        IdealDef d;
        d.name = name();
        d.generators = polys(1, 3);
        d.ring = name();
        return d;
      }
      case 2: {
        MapDef m;
        m.name = name();
        m.source = name();
        m.target = name();
        m.images = polys(0, 3);
        return m;
      }
      case 3: {
        Assertion a;
        a.kind = static_cast<Assertion::Kind>(pick(3));
        a.subject = name();
        if (a.kind == Assertion::Kind::AssPrimes) a.primes = names(0, 3);
        return a;
      }
      default: {
        AnalyzeCmd c;
        c.ideal = name();
        if (coin()) c.depth = pick(20);
        if (coin()) c.e_max = pick(6);
        if (coin()) c.window = pick(4);
        switch (pick(3)) {
          case 0: c.jacobian = true; break;
          case 1: c.test_element = poly(); break;
          default: break;
        }
        if (coin()) c.extension = name();
        if (coin()) c.out = path();
        if (coin()) c.csv = path();
        return c;
      }
    }
  }
};

template <typename F>
ErrorCode code_of(F&& f, Span* span = nullptr) {
  try {
    f();
  } catch (const SourceError& e) {
    if (span) *span = e.span();
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

}  // namespace

TEST(Parser, PrintParseRoundTrip) {
  Gen g(99);
  for (int trial = 0; trial < 500; ++trial) {
    Script s;
    const int k = 1 + g.pick(6);
    for (int i = 0; i < k; ++i) s.statements.push_back(g.statement());
    const std::string text = print(s);
    Script back = parse(text);
    ASSERT_EQ(back, s) << text;
    EXPECT_EQ(print(back), text);
  }
}

TEST(Parser, BundledSyntax) {
  auto s = parse(
      "# comment\n"
      "ring R = poly(F5, [x, y, z, w]) / ideal(x*z, x*w, y*z, y*w);\n"
      "ideal Q = (x + z, y + w) in R;  // trailing\n"
      "analyze Q --depth 8 --emax 3 --test-element x + z --out \"r.json\" --csv tables/q;\n");
  ASSERT_EQ(s.statements.size(), 3u);
  const auto& c = std::get<AnalyzeCmd>(s.statements[2]);
  EXPECT_EQ(c.depth, 8);
  EXPECT_EQ(c.e_max, 3);
  EXPECT_EQ(print(*c.test_element), "x + z");
  EXPECT_EQ(c.out, "r.json");
  EXPECT_EQ(c.csv, "tables/q");
}

TEST(Parser, SyntaxErrorPosition) {
  Span span;
  EXPECT_EQ(code_of([] { parse("ring R = poly(F5, [x]);\nideal Q = (x in R;\n"); }, &span), ErrorCode::SyntaxError);
  EXPECT_EQ(span.line, 2u);
  EXPECT_EQ(span.column, 14u);
  EXPECT_EQ(code_of([] { parse("ring R = poly(G5, [x]);"); }, &span), ErrorCode::SyntaxError);
  EXPECT_EQ(span.column, 15u);
  EXPECT_EQ(code_of([] { parse("analyze Q --speed 3;"); }, &span), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse("frobnicate Q;"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse("ring R = poly(F5, [x]) $"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse("analyze Q --out \"open;"); }), ErrorCode::SyntaxError);
}

TEST(Resolve, UndefinedIdentifier) {
  Span span;
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x, y]);\nideal Q = (x, v) in R;\n")); }, &span),
            ErrorCode::UndefinedIdentifier);
  EXPECT_EQ(span.line, 2u);
  EXPECT_EQ(span.column, 15u);
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x]);\nideal Q = (x) in T;\n")); }, &span),
            ErrorCode::UndefinedIdentifier);
  EXPECT_EQ(span.column, 18u);
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x]);\nanalyze Q;\n")); }, &span), ErrorCode::UndefinedIdentifier);
  EXPECT_EQ(span.column, 9u);
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x]);\nideal Q = (x) in R;\nanalyze Q --extension m;\n")); }),
            ErrorCode::UndefinedIdentifier);
}

TEST(Resolve, NotPrime) {
  Span span;
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F6, [x]);")); }, &span), ErrorCode::NotPrime);
  EXPECT_EQ(span.line, 1u);
  EXPECT_EQ(span.column, 15u);
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F1, [x]);")); }), ErrorCode::NotPrime);
}

TEST(Resolve, CharacteristicMismatch) {
  Span span;
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x]);\nring S = poly(F3, [y]);\n")); }, &span),
            ErrorCode::CharacteristicMismatch);
  EXPECT_EQ(span.line, 2u);
}

TEST(Resolve, Duplicates) {
  EXPECT_EQ(code_of([] { resolve(parse("ring R = poly(F5, [x]);\nideal R = (x) in R;\n")); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] {
              resolve(parse("ring R = poly(F5, [x, y]);\nideal P = (x) in R;\nideal P2 = (x) in R;\n"
                            "assert ass_primes R = [P, P2];\n"));
            }),
            ErrorCode::DomainError);
}

TEST(Resolve, BuildsEnvironment) {
  auto env = resolve(parse(
      "ring R = monomial_subring(F5, [x, y], [x^4, x^3*y, x*y^3, y^4], [a, b, c, d]);\n"
      "ring S = monomial_subring(F5, [x, y], [x^4, x^3*y, x^2*y^2, x*y^3, y^4], [a, b, e, c, d]);\n"
      "ideal Q = (a, d) in R;\n"
      "map phi : R -> S = [a, b, c, d];\n"
      "analyze Q --extension phi;\n"));
  EXPECT_EQ(env.characteristic, 5);
  EXPECT_EQ(env.rings.at("R")->dimension(), 2u);
  EXPECT_EQ(env.ideals.at("Q").second, "R");
  EXPECT_EQ(env.maps.count("phi"), 1u);
}
