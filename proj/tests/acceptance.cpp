// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tighthilb/tighthilb.hpp"

using namespace tighthilb;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Check {
  bool ok = true;
  std::ostringstream log;

  Check() { log << std::fixed << std::setprecision(3); }

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "  failed: " << what << "\n";
    }
  }
};

std::string subst(std::string text, std::uint64_t p) {
  const std::string key = "@P";
  for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key)) text.replace(pos, key.size(), std::to_string(p));
  return text;
}

const char* kTwoPlanes =
    "ring R = poly(F@P, [x, y, z, w]) / ideal(x*z, x*w, y*z, y*w);\n"
    "ideal Q = (x + z, y + w) in R;\nideal P1 = (x, y) in R;\nideal P2 = (z, w) in R;\n";

const char* kQuartic =
    "ring R = monomial_subring(F@P, [x, y], [x^4, x^3*y, x*y^3, y^4], [a, b, c, d]);\n"
    "ring S = monomial_subring(F@P, [x, y], [x^4, x^3*y, x^2*y^2, x*y^3, y^4], [a, b, e, c, d]);\n"
    "ideal Q = (a, d) in R;\nideal QS = (a, d) in S;\nmap phi : R -> S = [a, b, c, d];\n";

const char* kRegular = "ring R = poly(F@P, [x, y]);\nideal Q = (x, y) in R;\nideal Q2 = (x^2 + y, y^3) in R;\n";

dsl::Environment env_of(const char* text, std::uint64_t p) { return dsl::resolve(dsl::parse(subst(text, p))); }

TestElement te(const RingIdeal& q, const char* c) { return make_test_element(*q.ring(), parse_polynomial(q.ring()->ambient(), c)); }

AnalysisConfig two_planes_config(const dsl::Environment& env, int depth, int e_max) {
  AnalysisConfig cfg;
  cfg.depth = depth;
  cfg.e_max = e_max;
  cfg.test_element = te(env.ideals.at("Q").first, "x + z");
  cfg.assumptions.standard_sop = true;
  cfg.assumptions.test_element_generators = true;
  cfg.assumptions.ass_primes = {env.ideals.at("P1").first, env.ideals.at("P2").first};
  cfg.assumptions.ass_prime_names = {"P1", "P2"};
  return cfg;
}

AnalysisConfig quartic_config(const dsl::Environment& env, int depth, int e_max, int window) {
  AnalysisConfig cfg;
  cfg.depth = depth;
  cfg.e_max = e_max;
  cfg.window = window;
  cfg.test_element = te(env.ideals.at("Q").first, "a");
  cfg.assumptions.standard_sop = true;
  cfg.assumptions.test_element_generators = true;
  cfg.extension = env.maps.at("phi");
  cfg.extension_name = "phi";
  return cfg;
}

using V = std::vector<std::int64_t>;

bool fitted(const HilbertTable& t, const V& e) { return t.fitted && t.fitted->e == e; }

bool passed(const AnalysisReport& r, const char* id) {
  const Verdict* v = r.find(id);
  return v && v->outcome == Outcome::Pass;
}

// 1 -------------------------------------------------------------------------

Check two_planes_reproduction() {
  Check c;
  for (std::uint64_t p : {3u, 5u}) {
    const auto t0 = Clock::now();
    auto env = env_of(kTwoPlanes, p);
    auto rep = analyze(env.ideals.at("Q").first, two_planes_config(env, 8, 3));
    const double secs = seconds_since(t0);
    const std::string at = " (p=" + std::to_string(p) + ")";
    c.expect(fitted(rep.ordinary, {2, -1, 0}), "e = (2, -1, 0)" + at);
    c.expect(fitted(rep.tight, {2, 0, -1}), "e* = (2, 0, -1)" + at);
    c.expect(rep.len_q == 3 && rep.len_q_star == 1, "l(R/Q) = 3, l(R/Q*) = 1" + at);
    for (int n = 1; n <= 8; ++n) {
      c.expect(static_cast<std::int64_t>(rep.tight.at(n)) == 2 * binomial(n + 1, 2) - 1, "tight value n=" + std::to_string(n) + at);
    }
    c.expect(rep.profile && rep.profile->h == V{0, 1} && rep.profile->zero_star == 0, "h^1 = 1, l(0*) = 0" + at);
    c.expect(rep.frationality.verdict == FRationality::NotFRational, "verdict NOT_F_RATIONAL" + at);
    c.expect(!rep.any_fail(), "no failing check" + at);
    c.expect(secs < 60, "runtime under 60 s" + at);
    c.log << "  p=" << p << ": e=(2,-1,0) e*=(2,0,-1) h=(0,1) in " << secs << " s\n";
  }
  return c;
}

// 2 -------------------------------------------------------------------------

Check quartic_reproduction() {
  Check c;
  for (std::uint64_t p : {3u, 5u}) {
    auto env = env_of(kQuartic, p);
    const auto& q = env.ideals.at("Q").first;
    // Window 1 certifies within e_max = 3; window 2 needs e_max = 4.
    for (auto [e_max, window] : {std::pair{3, 1}, std::pair{4, 2}}) {
      const auto t0 = Clock::now();
      auto rep = analyze(q, quartic_config(env, 6, e_max, window));
      const double secs = seconds_since(t0);
      const std::string at = " (p=" + std::to_string(p) + ", e_max=" + std::to_string(e_max) + ", window=" +
                             std::to_string(window) + ")";
      c.expect(!rep.budget_exhausted(), "closures stabilized" + at);
      for (int n = 1; n <= 4; ++n) {
        c.expect(static_cast<std::int64_t>(rep.tight.at(n + 1)) == 4 * binomial(n + 2, 2) - 1,
                 "l(R/(Q^" + std::to_string(n + 1) + ")*)" + at);
      }
      c.expect(rep.tight.fitted && rep.tight.fitted->e[1] == 0, "e_1* = 0" + at);
      const Verdict* x = rep.find("extension_compare");
      c.expect(x && x->outcome == Outcome::Pass && x->witness["gap_constant"] == true && x->witness["gap_from_n1"] == 1,
               "constant extension gap 1" + at);
      c.expect(rep.frationality.verdict == FRationality::NotFRational, "verdict NOT_F_RATIONAL" + at);
      c.expect(!rep.any_fail(), "no failing check" + at);
      c.expect(secs < 300, "runtime under 5 min" + at);
      c.log << "  p=" << p << " e_max=" << e_max << " window=" << window << ": gap "
            << (x ? x->witness["gap"].dump() : "?") << " in " << secs << " s\n";
    }
  }
  return c;
}

// 3 -------------------------------------------------------------------------

struct RandomCase {
  RingIdeal q;
  TestElement c;
  std::string label;
};

std::string random_term(std::mt19937_64& rng, const std::vector<std::string>& vars, unsigned degree, std::uint64_t p) {
  std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
  std::uniform_int_distribution<std::uint64_t> coeff(1, p - 1);
  std::string out = std::to_string(coeff(rng));
  for (unsigned i = 0; i < degree; ++i) out += "*" + vars[pick(rng)];
  return out;
}

std::vector<RandomCase> random_cases(std::mt19937_64& rng) {
  std::vector<RandomCase> out;
  std::uniform_int_distribution<int> small(1, 2), coin(0, 1);
  auto add = [&](const PresentedRingPtr& R, const std::vector<std::string>& gens, const char* c, const std::string& label) {
    try {
      std::vector<Polynomial> polys;
      for (const auto& g : gens) polys.push_back(parse_polynomial(R->ambient(), g));
      RingIdeal q(R, polys);
      if (!length(q)) return;
      TestElement t = c ? make_test_element(*R, parse_polynomial(R->ambient(), c)) : jacobian_test_element(*R);
      out.push_back({q, t, label});
    } catch (const Error&) {
    }
  };
  for (int round = 0; round < 12; ++round) {
    for (std::uint64_t p : {2u, 3u}) {
      {
        auto R = PresentedRing::create(PolyRing::create(PrimeField(p), {"x", "y"}), {});
        const std::vector<std::string> v{"x", "y"};
        std::string f = "x^" + std::to_string(small(rng)), g = "y^" + std::to_string(small(rng));
        if (coin(rng)) f += " + " + random_term(rng, v, 2, p);
        if (coin(rng)) g += " + " + random_term(rng, v, 3, p);
        add(R, {f, g}, "1", "regular p=" + std::to_string(p) + " (" + f + ", " + g + ")");
      }
      {
        auto env = env_of(kTwoPlanes, p);
        auto R = env.rings.at("R");
        const std::vector<std::string> v{"x", "y", "z", "w"};
        std::string f = "x^" + std::to_string(small(rng)) + " + z^" + std::to_string(small(rng));
        std::string g = "y^" + std::to_string(small(rng)) + " + w^" + std::to_string(small(rng));
        if (coin(rng)) f += " + " + random_term(rng, v, 2, p);
        add(R, {f, g}, "x + z", "two planes p=" + std::to_string(p) + " (" + f + ", " + g + ")");
      }
      {
        auto env = env_of(kQuartic, p);
        auto R = env.rings.at("R");
        std::string f = "a^" + std::to_string(small(rng)), g = "d^" + std::to_string(small(rng));
        if (coin(rng)) f += " + b";
        add(R, {f, g}, "a", "quartic p=" + std::to_string(p) + " (" + f + ", " + g + ")");
      }
      {
        auto R = toric_presentation(PrimeField(p), {{2, 0}, {1, 1}, {0, 2}}, {"a", "b", "c"});
        std::string f = "a^" + std::to_string(small(rng)), g = "c^" + std::to_string(small(rng));
        if (coin(rng)) g += " + b";
        add(R, {f, g}, nullptr, "quadric cone p=" + std::to_string(p) + " (" + f + ", " + g + ")");
      }
    }
  }
  return out;
}

Check lower_bound_suite() {
  Check c;
  std::mt19937_64 rng(32);
  auto cases = random_cases(rng);
  int stabilized = 0, rows = 0, violations = 0;
  for (const auto& rc : cases) {
    const int d = static_cast<int>(rc.q.ring()->dimension());
    auto t = tight_hilbert_table(rc.q, d + 2, rc.c, 3);
    if (!t.all_stabilized()) continue;
    ++stabilized;
    const std::uint64_t base = t.at(1);
    for (int n = 0; n + 1 <= t.depth(); ++n) {
      ++rows;
      if (static_cast<std::int64_t>(t.at(n + 1)) < static_cast<std::int64_t>(base) * binomial(n + d, d)) {
        ++violations;
        c.log << "  violation: " << rc.label << " n=" << n << "\n";
      }
    }
  }
  c.expect(stabilized >= 20, "at least 20 stabilized tables (got " + std::to_string(stabilized) + ")");
  c.expect(violations == 0, "zero violations");
  c.log << "  " << cases.size() << " ideals, " << stabilized << " stabilized tables, " << rows << " rows, " << violations
        << " violations\n";
  return c;
}

// 4 -------------------------------------------------------------------------

Check identity_suite() {
  Check c;
  std::vector<std::pair<std::string, AnalysisReport>> reports;
  for (std::uint64_t p : {3u, 5u}) {
    auto planes = env_of(kTwoPlanes, p);
    reports.emplace_back("two planes p=" + std::to_string(p), analyze(planes.ideals.at("Q").first, two_planes_config(planes, 8, 3)));
    auto quartic = env_of(kQuartic, p);
    reports.emplace_back("quartic p=" + std::to_string(p), analyze(quartic.ideals.at("Q").first, quartic_config(quartic, 6, 4, 2)));
    AnalysisConfig s;
    s.depth = 6;
    s.test_element = te(quartic.ideals.at("QS").first, "1");
    s.assumptions.standard_sop = s.assumptions.test_element_generators = true;
    reports.emplace_back("quartic normalization p=" + std::to_string(p), analyze(quartic.ideals.at("QS").first, s));
    auto regular = env_of(kRegular, p);
    AnalysisConfig r;
    r.assumptions.standard_sop = r.assumptions.test_element_generators = true;
    for (const char* name : {"Q", "Q2"}) {
      reports.emplace_back(std::string("regular ") + name + " p=" + std::to_string(p), analyze(regular.ideals.at(name).first, r));
    }
  }
  for (const auto& [label, rep] : reports) {
    c.expect(passed(rep, "coefficient_identities"), "identities on " + label);
    c.expect(passed(rep, "cohomology_roundtrip"), "round trip on " + label);
    c.expect(passed(rep, "cohomology_prediction"), "cohomology prediction on " + label);
  }
  std::mt19937_64 rng(45);
  std::uniform_int_distribution<std::int64_t> small(0, 5);
  int trips = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 5;
    V h(d);
    for (auto& v : h) v = small(rng);
    const std::int64_t e0 = 1 + small(rng);
    V e = coefficients_from_cohomology(e0, h);
    std::int64_t len = e0, weighted = 0;
    for (std::size_t i = 0; i < d; ++i) {
      len += binomial(static_cast<std::int64_t>(d) - 1, static_cast<std::int64_t>(i)) * h[i];
      weighted += binomial(static_cast<std::int64_t>(d), static_cast<std::int64_t>(i)) * h[i];
    }
    auto prof = infer_cohomology(e, len, len - weighted, d);
    c.expect(!prof.contradicted && coefficients_from_cohomology(e0, prof.h) == e, "synthetic round trip");
    ++trips;
  }
  c.log << "  " << reports.size() << " analyses, " << trips << " synthetic round trips\n";
  return c;
}

// 5 -------------------------------------------------------------------------

Check intersection_suite() {
  Check c;
  struct Input {
    std::string label;
    RingIdeal q;
    TestElement t;
    int e_max;
  };
  std::vector<Input> inputs;
  for (std::uint64_t p : {3u, 5u}) {
    auto planes = env_of(kTwoPlanes, p);
    inputs.push_back({"two planes p=" + std::to_string(p), planes.ideals.at("Q").first, te(planes.ideals.at("Q").first, "x + z"), 3});
    auto quartic = env_of(kQuartic, p);
    inputs.push_back({"quartic p=" + std::to_string(p), quartic.ideals.at("Q").first, te(quartic.ideals.at("Q").first, "a"), 4});
    auto regular = env_of(kRegular, p);
    for (const char* name : {"Q", "Q2"}) {
      inputs.push_back({std::string("regular ") + name + " p=" + std::to_string(p), regular.ideals.at(name).first,
                        te(regular.ideals.at(name).first, "1"), 3});
    }
  }
  int checked = 0;
  for (const auto& in : inputs) {
    std::vector<RingIdeal> stars;
    bool stable = true;
    for (int n = 1; n <= 4; ++n) {
      auto r = star_closure(ideal_power(in.q, n), in.t, in.e_max);
      stable = stable && r.status == ClosureStatus::Stabilized;
      stars.push_back(r.closure);
    }
    c.expect(stable, "closures stabilized on " + in.label);
    for (int n = 0; n <= 3; ++n) {
      auto l = check_intersection_identity(in.q, n, stars[0], stars[static_cast<std::size_t>(n)]);
      c.expect(l.intersection_equal, "intersection on " + in.label + " n=" + std::to_string(n));
      c.expect(l.length_equal, "length identity on " + in.label + " n=" + std::to_string(n));
      auto a = aberbach_check(in.q, n, stars[0], stars[static_cast<std::size_t>(n)]);
      c.expect(a.equal, "(Q^{n+1})* = Q^n Q* on " + in.label + " n=" + std::to_string(n));
      ++checked;
    }
  }
  c.log << "  " << inputs.size() << " ideals, " << checked << " (ideal, n) pairs\n";
  return c;
}

// 6 -------------------------------------------------------------------------

Check component_suite() {
  Check c;
  for (std::uint64_t p : {3u, 5u}) {
    auto env = env_of(kTwoPlanes, p);
    const auto& q = env.ideals.at("Q").first;
    std::vector<ClosureResult> closures;
    for (int n = 1; n <= 3; ++n) closures.push_back(star_closure(ideal_power(q, n), te(q, "x + z"), 3));
    auto r = component_pipeline(q, env.ideals.at("P1").first, env.ideals.at("P2").first, 3, closures);
    for (int n = 1; n <= 3; ++n) {
      c.expect(r.closure_matches_intersection[static_cast<std::size_t>(n - 1)],
               "intersection equals star closure p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  c.log << "  p in {3, 5}, n = 1..3\n";
  return c;
}

// 7 -------------------------------------------------------------------------

Check brute_force_suite() {
  Check c;
  std::mt19937_64 rng(7);
  const char* relation_sets[][2] = {{"", ""}, {"x*z", "y*z"}, {"x*y", ""}, {"x^2 - y*z", ""}, {"y^2 - x*z", "x*y"}};
  int rings = 0, comparisons = 0, disagreements = 0;
  for (int trial = 0; trial < 600 && rings < 40; ++trial) {
    auto r = PolyRing::create(PrimeField(2), {"x", "y", "z"});
    std::vector<Polynomial> rel;
    for (const char* t : relation_sets[trial % 5]) {
      if (*t) rel.push_back(parse_polynomial(r, t));
    }
    auto R = PresentedRing::create(r, rel);
    std::uniform_int_distribution<unsigned> pw(1, 3);
    std::vector<Polynomial> gens;
    for (const char* v : {"x", "y", "z"}) {
      gens.push_back(parse_polynomial(r, v).pow(pw(rng)) + oracle::random_polynomial(r, rng, 3, 2) * parse_polynomial(r, "x*y"));
    }
    RingIdeal I(R, gens);
    std::optional<std::uint64_t> len;
    try {
      len = length(I);
    } catch (const Error&) {
      continue;
    }
    if (!len || *len == 0 || *len > 8) continue;
    const auto basis = *standard_monomials(I.gb());
    Polynomial cpoly = R->reduce(oracle::random_polynomial(r, rng, 2, 3));
    if (cpoly.is_zero()) continue;
    TestElement t{cpoly, "user-supplied"};
    for (unsigned e : {0u, 1u, 2u}) {
      const auto space = membership_space(I, t, e);
      const std::uint64_t q = 1ULL << e;
      std::vector<Polynomial> bracket_gens;
      for (const auto& g : gens) bracket_gens.push_back(oracle::naive_power(g, q));
      for (const auto& g : rel) bracket_gens.push_back(g);
      auto bracket = buchberger(bracket_gens);
      std::set<std::vector<Coeff>> members, spanned;
      for (std::uint32_t mask = 0; mask < (1U << basis.size()); ++mask) {
        std::vector<Coeff> vec(basis.size());
        Polynomial x(r);
        for (std::size_t i = 0; i < basis.size(); ++i) {
          vec[i] = (mask >> i) & 1U;
          if (vec[i]) x = x + Polynomial::monomial(r, 1, basis[i]);
        }
        ++comparisons;
        if (bracket.normal_form(cpoly * oracle::naive_power(x, q)).is_zero()) members.insert(vec);
      }
      for (std::uint32_t mask = 0; mask < (1U << space.rows()); ++mask) {
        std::vector<Coeff> vec(basis.size(), 0);
        for (std::size_t i = 0; i < space.rows(); ++i) {
          if ((mask >> i) & 1U) {
            for (std::size_t j = 0; j < basis.size(); ++j) vec[j] ^= space(i, j);
          }
        }
        spanned.insert(vec);
      }
      if (members != spanned) ++disagreements;
    }
    ++rings;
  }
  c.expect(rings >= 20, "at least 20 tiny rings (got " + std::to_string(rings) + ")");
  c.expect(disagreements == 0, "full agreement");
  c.log << "  " << rings << " ideals, " << comparisons << " elements enumerated, " << disagreements << " disagreements\n";
  return c;
}

// 8 -------------------------------------------------------------------------

Check status_contract() {
  Check c;
  auto env = env_of(kTwoPlanes, 3);
  const auto& q = env.ideals.at("Q").first;
  auto truncated = two_planes_config(env, 5, 0);
  auto starved = two_planes_config(env, 5, 3);
  starved.budget = 0;
  for (const auto& [label, cfg] : {std::pair{"e_max=0", truncated}, std::pair{"budget=0", starved}}) {
    auto rep = analyze(q, cfg);
    Json j = analysis_to_json(rep);
    c.expect(!rep.tight.fitted, std::string("no fitted tight coefficients with ") + label);
    c.expect(j["coefficients"]["e_star"].is_null() && j["tight"]["fitted"].is_null(), std::string("JSON withholds e* with ") + label);
    c.expect(j["tight"]["fit_error"] == "BUDGET_EXHAUSTED", std::string("fit_error with ") + label);
    c.expect(rep.budget_exhausted() && exit_code(rep) == 3, std::string("exit code 3 with ") + label);
    c.expect(!rep.profile, std::string("no cohomology profile with ") + label);
    c.expect(rep.frationality.verdict == FRationality::Inconclusive, std::string("verdict INCONCLUSIVE with ") + label);
  }
  c.log << "  e_max=0 and budget=0 both withhold coefficients\n";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
      {"two planes reproduction", two_planes_reproduction},
      {"quartic curve reproduction", quartic_reproduction},
      {"tight lower bound on random ideals", lower_bound_suite},
      {"coefficient identities and round trip", identity_suite},
      {"intersection and product identities", intersection_suite},
      {"component pipeline cross-check", component_suite},
      {"brute-force membership at p=2", brute_force_suite},
      {"truncated closures withhold coefficients", status_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "  exception: " << e.what() << "\n";
    }
    std::printf("%s criterion %zu: %s (%.2f s)\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0));
    std::fputs(c.log.str().c_str(), stdout);
    if (!c.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
