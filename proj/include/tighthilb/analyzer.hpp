#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tighthilb/hilbert.hpp"

namespace tighthilb {

struct Assumptions {
  bool standard_sop = false;
  bool test_element_generators = false;
  std::vector<RingIdeal> ass_primes;  // empty unless asserted
  std::vector<std::string> ass_prime_names;
};

enum class Outcome { Pass, Fail, Skipped };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Skipped: return "SKIPPED";
  }
  return "?";
}

struct Verdict {
  std::string id;
  Outcome outcome = Outcome::Skipped;
  nlohmann::ordered_json witness = nlohmann::ordered_json::object();
  std::vector<std::string> assumptions;
  std::string note;
};

struct CohomologyProfile {
  std::vector<std::int64_t> h;  // h^0 .. h^{d-1}
  std::int64_t zero_star = 0;   // ℓ(0*_{H^d_m(R)})
  bool contradicted = false;
  std::string reason;
};

/// Solves the triangular system linking e_1..e_d to h^j, checks the
/// standardness relation, then reads ℓ(0*) off ℓ(Q*/Q).
inline CohomologyProfile infer_cohomology(const std::vector<std::int64_t>& e, std::int64_t len_q,
                                          std::int64_t len_q_star, std::size_t d) {
  CohomologyProfile p;
  const auto di = static_cast<std::int64_t>(d);
  p.h.assign(d, 0);
  // e_i = (-1)^i Σ_{j=0}^{d-i} C(d-i-1, j-1) h^j; the j = d-i coefficient is 1.
  for (std::int64_t i = di; i >= 1; --i) {
    std::int64_t v = (i % 2 == 0) ? e[static_cast<std::size_t>(i)] : -e[static_cast<std::size_t>(i)];
    for (std::int64_t j = 0; j < di - i; ++j) v -= binomial(di - i - 1, j - 1) * p.h[static_cast<std::size_t>(j)];
    p.h[static_cast<std::size_t>(di - i)] = v;
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (p.h[j] < 0) {
      p.contradicted = true;
      p.reason = "negative h^" + std::to_string(j);
    }
  }
  std::int64_t standard = 0;
  for (std::int64_t i = 0; i < di; ++i) standard += binomial(di - 1, i) * p.h[static_cast<std::size_t>(i)];
  if (!p.contradicted && len_q - e[0] != standard) {
    p.contradicted = true;
    p.reason = "standardness relation fails: l(R/Q) - e_0 = " + std::to_string(len_q - e[0]) + " but the sum is " +
               std::to_string(standard);
  }
  std::int64_t weighted = 0;
  for (std::int64_t i = 0; i < di; ++i) weighted += binomial(di, i) * p.h[static_cast<std::size_t>(i)];
  p.zero_star = (len_q - len_q_star) - weighted;
  if (!p.contradicted && p.zero_star < 0) {
    p.contradicted = true;
    p.reason = "negative length for 0* in top local cohomology";
  }
  return p;
}

/// e_1..e_d from h (e_0 passed through).
inline std::vector<std::int64_t> coefficients_from_cohomology(std::int64_t e0, const std::vector<std::int64_t>& h) {
  const auto d = static_cast<std::int64_t>(h.size());
  std::vector<std::int64_t> e{e0};
  for (std::int64_t i = 1; i <= d; ++i) {
    std::int64_t s = 0;
    for (std::int64_t j = 0; j <= d - i; ++j) s += binomial(d - i - 1, j - 1) * h[static_cast<std::size_t>(j)];
    e.push_back(i % 2 == 0 ? s : -s);
  }
  return e;
}

/// Tight coefficients e_1*..e_d* predicted from the profile; the top one
/// reads (-1)^{d-1} h^1.
inline std::vector<std::int64_t> tight_coefficients_from_cohomology(const CohomologyProfile& p) {
  const auto d = static_cast<std::int64_t>(p.h.size());
  auto h = [&](std::int64_t j) { return (j >= 0 && j < d) ? p.h[static_cast<std::size_t>(j)] : 0; };
  std::vector<std::int64_t> out;
  std::int64_t e1 = p.zero_star;
  for (std::int64_t i = 2; i <= d - 1; ++i) e1 += binomial(d - 2, i - 2) * h(i);
  out.push_back(e1);
  for (std::int64_t i = 2; i <= d; ++i) {
    std::int64_t s = h(d - i + 1);
    for (std::int64_t j = 0; j <= d - i; ++j) s += binomial(d - i - 1, j - 2) * h(j);
    out.push_back(i % 2 == 1 ? s : -s);
  }
  return out;
}

enum class FRationality { FRational, NotFRational, Inconclusive };

inline const char* to_string(FRationality f) {
  switch (f) {
    case FRationality::FRational: return "F_RATIONAL";
    case FRationality::NotFRational: return "NOT_F_RATIONAL";
    case FRationality::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct FRationalityVerdict {
  FRationality verdict = FRationality::Inconclusive;
  std::vector<std::string> reasons;
};

inline FRationalityVerdict frationality_verdict(std::optional<std::int64_t> e1, std::optional<std::int64_t> e1_star,
                                                const std::optional<CohomologyProfile>& profile, std::size_t d) {
  FRationalityVerdict v;
  if (!e1 || !e1_star) {
    v.reasons.push_back("coefficients unavailable");
    return v;
  }
  const bool via_coefficients = *e1 == *e1_star;
  v.reasons.push_back(via_coefficients ? "e_1* = e_1" : "e_1* != e_1");
  v.verdict = via_coefficients ? FRationality::FRational : FRationality::NotFRational;
  if (d >= 2 && profile && !profile->contradicted) {
    const bool depth2 = profile->h[0] == 0 && profile->h[1] == 0;
    const bool via_depth = *e1_star == 0 && depth2;
    v.reasons.push_back(depth2 ? "depth >= 2 (h^0 = h^1 = 0)" : "depth < 2");
    if (via_depth != via_coefficients) {
      v.verdict = FRationality::Inconclusive;
      v.reasons.push_back("coefficient and depth criteria disagree");
    } else {
      v.reasons.push_back("coefficient and depth criteria agree");
    }
  } else if (d >= 2) {
    v.reasons.push_back("depth criterion unavailable without a consistent cohomology profile");
  }
  return v;
}

struct ComponentReport {
  bool distinct = false;
  std::size_t intersection_dim = 0;
  std::int64_t e0 = 0;
  std::vector<std::int64_t> component_e0;
  std::vector<std::uint64_t> correction;           // ℓ(R/(Q^m + P1 + P2)), m = 1..N
  std::vector<std::uint64_t> predicted;            // ℓ(R/(Q^m+P1)) + ℓ(R/(Q^m+P2)) - correction
  std::vector<bool> closure_matches_intersection;  // against the supplied closures
  bool correction_degree_ok = false;
};

/// Two-component analysis with P1, P2 the associated primes of R.
inline ComponentReport component_pipeline(const RingIdeal& q, const RingIdeal& p1, const RingIdeal& p2, int depth,
                                          const std::vector<ClosureResult>& closures = {}) {
  ComponentReport r;
  const auto& ring = q.ring();
  const std::size_t d = ring->dimension();
  r.distinct = !(p1 == p2);
  if (!r.distinct) throw Error(ErrorCode::DomainError, "associated primes must be distinct");
  const RingIdeal both = ideal_sum(p1, p2);
  r.intersection_dim = staircase_dimension(both.gb());
  if (d < 2 || r.intersection_dim > d - 2) {
    throw Error(ErrorCode::DimViolation, "dim R/(P1 + P2) = " + std::to_string(r.intersection_dim) + " exceeds d - 2");
  }
  for (const RingIdeal* p : {&p1, &p2}) {
    auto component = quotient_ring(*p);
    if (component->dimension() < d) {
      r.component_e0.push_back(0);
      continue;
    }
    RingIdeal qp = extend_to(q, component);
    r.component_e0.push_back(multiplicity(qp, std::max(depth, static_cast<int>(d) + 2)));
  }
  r.e0 = r.component_e0[0] + r.component_e0[1];
  for (int m = 1; m <= depth; ++m) {
    const RingIdeal qm = ideal_power(q, m);
    const RingIdeal a = ideal_sum(qm, p1);
    const RingIdeal b = ideal_sum(qm, p2);
    const std::uint64_t corr = finite_length(ideal_sum(a, p2));
    r.correction.push_back(corr);
    r.predicted.push_back(finite_length(a) + finite_length(b) - corr);
    if (static_cast<std::size_t>(m) <= closures.size()) {
      r.closure_matches_intersection.push_back(ideal_intersect(a, b) == closures[static_cast<std::size_t>(m - 1)].closure);
    }
  }
  // A polynomial of degree <= d-2 has vanishing (d-1)-st differences.
  std::vector<std::int64_t> diff(r.correction.begin(), r.correction.end());
  for (std::size_t k = 0; k + 1 < d && !diff.empty(); ++k) {
    for (std::size_t t = 0; t + 1 < diff.size(); ++t) diff[t] = diff[t + 1] - diff[t];
    diff.pop_back();
  }
  // Ignore the first value: Hilbert functions agree with their polynomial only eventually.
  r.correction_degree_ok = diff.size() >= 2 && std::all_of(diff.begin() + 1, diff.end(), [](std::int64_t v) { return v == 0; });
  return r;
}

struct ExtensionReport {
  std::vector<std::uint64_t> star;       // ℓ(R/(Q^{n+1})*), n = 0..
  std::vector<std::int64_t> bound;       // e_0 C(n+d, d)
  std::vector<std::uint64_t> extension;  // ℓ(S/Q^{n+1}S)
  std::vector<std::int64_t> gap;         // extension - star
  std::int64_t gap_from_one = 0;
  bool gap_constant = false;
  bool equality_occurs = false;
};

inline ExtensionReport extension_compare(const RingMap& map, const RingIdeal& q, const HilbertTable& tight,
                                         std::int64_t e0) {
  ExtensionReport r;
  const auto d = static_cast<std::int64_t>(q.ring()->dimension());
  for (int n = 0; n < tight.depth(); ++n) {
    r.star.push_back(tight.at(n + 1));
    r.bound.push_back(e0 * binomial(n + d, d));
    r.extension.push_back(extension_length(map, q, n + 1));
    r.gap.push_back(static_cast<std::int64_t>(r.extension.back()) - static_cast<std::int64_t>(r.star.back()));
    if (static_cast<std::int64_t>(r.star.back()) == r.bound.back()) r.equality_occurs = true;
  }
  if (r.gap.size() >= 2) {
    r.gap_from_one = r.gap[1];
    r.gap_constant = std::all_of(r.gap.begin() + 1, r.gap.end(), [&](std::int64_t g) { return g == r.gap_from_one; });
  }
  return r;
}

struct AnalysisConfig {
  int depth = 0;  // 0 means d + 6
  int e_max = 4;
  int window = 2;
  std::optional<TestElement> test_element;  // default: jacobian for hypersurfaces, else 1
  Assumptions assumptions;
  std::optional<RingMap> extension;
  std::string extension_name;
  std::size_t budget = closure_budget();
};

struct AnalysisReport {
  std::string ideal_name;
  std::string ring_name;
  RingIdeal q;
  std::size_t d = 0;
  int e_max = 0;
  int window = 0;
  TestElement test_element;
  Assumptions assumptions;
  std::uint64_t len_q = 0;
  std::uint64_t len_q_star = 0;
  HilbertTable ordinary;
  HilbertTable tight;
  std::optional<CohomologyProfile> profile;
  FRationalityVerdict frationality;
  std::vector<Verdict> verdicts;
  std::string extension_name;

  bool any_fail() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.outcome == Outcome::Fail; });
  }
  bool budget_exhausted() const { return !tight.all_stabilized(); }
  bool inconclusive() const { return frationality.verdict == FRationality::Inconclusive || budget_exhausted(); }

  const Verdict* find(const std::string& id) const {
    for (const auto& v : verdicts) {
      if (v.id == id) return &v;
    }
    return nullptr;
  }
};

namespace detail {

inline nlohmann::ordered_json to_json_vector(const std::vector<std::int64_t>& v) { return nlohmann::ordered_json(v); }

inline Verdict make_verdict(std::string id, bool ok, nlohmann::ordered_json witness = nlohmann::ordered_json::object(),
                            std::vector<std::string> assumptions = {}) {
  Verdict v;
  v.id = std::move(id);
  v.outcome = ok ? Outcome::Pass : Outcome::Fail;
  v.witness = std::move(witness);
  v.assumptions = std::move(assumptions);
  return v;
}

inline Verdict skipped(std::string id, std::string note, std::vector<std::string> assumptions = {}) {
  Verdict v;
  v.id = std::move(id);
  v.outcome = Outcome::Skipped;
  v.note = std::move(note);
  v.assumptions = std::move(assumptions);
  return v;
}

inline TestElement default_test_element(const PresentedRing& ring) {
  if (ring.is_polynomial_ring()) return {ring.constant(1), "user-supplied"};
  return jacobian_test_element(ring);
}

}  // namespace detail

/// Runs every check on one parameter ideal.
inline AnalysisReport analyze(const RingIdeal& q, const AnalysisConfig& config) {
  using nlohmann::ordered_json;
  AnalysisReport rep;
  const auto& ring = q.ring();
  rep.q = q;
  rep.d = ring->dimension();
  rep.e_max = config.e_max;
  rep.window = config.window;
  rep.assumptions = config.assumptions;
  rep.extension_name = config.extension_name;
  const int depth = config.depth > 0 ? config.depth : static_cast<int>(rep.d) + 6;
  rep.test_element = config.test_element ? *config.test_element : detail::default_test_element(*ring);
  const std::vector<std::string> te_assumed{"test_element_generators"};
  const std::vector<std::string> sop_assumed{"standard_sop"};
  const auto& A = config.assumptions;

  rep.ordinary = hilbert_table(q, depth);
  rep.tight = tight_hilbert_table(q, depth, rep.test_element, config.e_max, config.window, config.budget);
  rep.len_q = rep.ordinary.at(1);
  rep.len_q_star = rep.tight.at(1);
  const bool stable = rep.tight.all_stabilized();
  const std::int64_t d = static_cast<std::int64_t>(rep.d);

  if (!A.ass_primes.empty()) {
    const bool avoids = avoids_primes(rep.test_element, A.ass_primes);
    rep.verdicts.push_back(detail::make_verdict("test_element_avoids_primes", avoids,
                                                {{"test_element", format(rep.test_element.c)}}, {"ass_primes"}));
  }

  {
    bool ok = true;
    for (const auto& c : rep.tight.closures) ok = ok && c.ideal_verified;
    rep.verdicts.push_back(detail::make_verdict("closure_is_ideal", ok));
  }

  if (rep.ordinary.fitted) {
    rep.verdicts.push_back(detail::make_verdict(
        "ordinary_fit", true,
        {{"e", rep.ordinary.fitted->e}, {"window", {rep.ordinary.fitted->n_lo, rep.ordinary.fitted->n_hi}}}));
  } else {
    rep.verdicts.push_back(detail::make_verdict("ordinary_fit", false, {{"error", rep.ordinary.fit_error}}));
  }
  if (rep.tight.fitted) {
    rep.verdicts.push_back(detail::make_verdict(
        "tight_fit", true, {{"e_star", rep.tight.fitted->e}, {"window", {rep.tight.fitted->n_lo, rep.tight.fitted->n_hi}}}));
  } else if (!stable) {
    rep.verdicts.push_back(detail::skipped("tight_fit", "closures not stabilized; coefficients withheld"));
  } else {
    rep.verdicts.push_back(detail::make_verdict("tight_fit", false, {{"error", rep.tight.fit_error}}));
  }

  const std::optional<std::vector<std::int64_t>> e =
      rep.ordinary.fitted ? std::optional(rep.ordinary.fitted->e) : std::nullopt;
  const std::optional<std::vector<std::int64_t>> es =
      rep.tight.fitted ? std::optional(rep.tight.fitted->e) : std::nullopt;

  if (e && es) {
    rep.verdicts.push_back(
        detail::make_verdict("multiplicity_equal", (*e)[0] == (*es)[0] && (*e)[0] >= 1 &&
                                                       (*e)[0] <= static_cast<std::int64_t>(rep.len_q),
                             {{"e0", (*e)[0]}, {"e0_star", (*es)[0]}, {"length_R_Q", rep.len_q}}));
  } else {
    rep.verdicts.push_back(detail::skipped("multiplicity_equal", "coefficients unavailable"));
  }

  if (stable) {
    ordered_json rows = ordered_json::array();
    bool ok = true;
    for (int n = 0; n + 1 <= rep.tight.depth(); ++n) {
      const std::int64_t lhs = static_cast<std::int64_t>(rep.tight.at(n + 1));
      const std::int64_t rhs = static_cast<std::int64_t>(rep.len_q_star) * binomial(n + d, d);
      ok = ok && lhs >= rhs;
      rows.push_back({{"n", n}, {"lhs", lhs}, {"rhs", rhs}});
    }
    rep.verdicts.push_back(detail::make_verdict("tight_lower_bound", ok, {{"rows", rows}}));
  } else {
    rep.verdicts.push_back(detail::skipped("tight_lower_bound", "closures not stabilized"));
  }

  if (e && stable) {
    rep.verdicts.push_back(detail::make_verdict("multiplicity_vs_closure_length", (*e)[0] >= static_cast<std::int64_t>(rep.len_q_star),
                                                {{"e0", (*e)[0]}, {"length_R_Qstar", rep.len_q_star}}));
  } else {
    rep.verdicts.push_back(detail::skipped("multiplicity_vs_closure_length", "coefficients unavailable"));
  }

  const int check_depth = std::min(3, rep.tight.depth() - 1);
  if (stable) {
    const RingIdeal& q_star = rep.tight.closures[0].closure;
    ordered_json rows = ordered_json::array();
    bool ok = true;
    for (int n = 0; n <= check_depth; ++n) {
      auto r = check_intersection_identity(q, n, q_star, rep.tight.closures[static_cast<std::size_t>(n)].closure);
      ok = ok && r.holds();
      rows.push_back({{"n", n}, {"intersection_equal", r.intersection_equal}, {"module_length", r.module_length},
                      {"expected_length", r.expected_length}});
    }
    rep.verdicts.push_back(detail::make_verdict("intersection_identity", ok, {{"rows", rows}}));
    if (A.test_element_generators) {
      ordered_json ab = ordered_json::array();
      bool all = true;
      for (int n = 1; n <= check_depth; ++n) {
        auto r = aberbach_check(q, n, q_star, rep.tight.closures[static_cast<std::size_t>(n)].closure);
        all = all && r.equal;
        ab.push_back({{"n", n}, {"equal", r.equal}, {"closure_length", r.closure_length}, {"product_length", r.product_length}});
      }
      rep.verdicts.push_back(detail::make_verdict("aberbach", all, {{"rows", ab}}, te_assumed));
    } else {
      rep.verdicts.push_back(detail::skipped("aberbach", "needs test_element_generators", te_assumed));
    }
  } else {
    rep.verdicts.push_back(detail::skipped("intersection_identity", "closures not stabilized"));
    rep.verdicts.push_back(detail::skipped("aberbach", "closures not stabilized", te_assumed));
  }

  if (!A.test_element_generators) {
    rep.verdicts.push_back(detail::skipped("coefficient_identities", "needs test_element_generators", te_assumed));
  } else if (!e || !es) {
    rep.verdicts.push_back(detail::skipped("coefficient_identities", "coefficients unavailable", te_assumed));
  } else {
    bool ok = d == 0 || (*es)[1] == (*e)[0] - static_cast<std::int64_t>(rep.len_q_star) + (*e)[1];
    ordered_json rows = ordered_json::array();
    for (std::int64_t j = 2; j <= d; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      ok = ok && (*es)[ju] == (*e)[ju] + (*e)[ju - 1];
      rows.push_back({{"j", j}, {"e_star", (*es)[ju]}, {"e_j_plus_e_j_minus_1", (*e)[ju] + (*e)[ju - 1]}});
    }
    ordered_json w = {{"e1_star", d >= 1 ? (*es)[1] : 0},
                      {"e0_minus_len_plus_e1", d >= 1 ? (*e)[0] - static_cast<std::int64_t>(rep.len_q_star) + (*e)[1] : 0},
                      {"higher", rows}};
    rep.verdicts.push_back(detail::make_verdict("coefficient_identities", ok, w, te_assumed));
  }

  if (!A.standard_sop) {
    rep.verdicts.push_back(detail::skipped("infer_cohomology", "needs standard_sop", sop_assumed));
    rep.verdicts.push_back(detail::skipped("cohomology_roundtrip", "needs standard_sop", sop_assumed));
    rep.verdicts.push_back(detail::skipped("standard_hilbert_function", "needs standard_sop", sop_assumed));
  } else if (!e || !stable) {
    rep.verdicts.push_back(detail::skipped("infer_cohomology", "coefficients unavailable", sop_assumed));
    rep.verdicts.push_back(detail::skipped("cohomology_roundtrip", "coefficients unavailable", sop_assumed));
    rep.verdicts.push_back(detail::make_verdict("standard_hilbert_function", rep.ordinary.fitted && rep.ordinary.fitted->n_lo == 1,
                                                {}, sop_assumed));
  } else {
    rep.profile = infer_cohomology(*e, static_cast<std::int64_t>(rep.len_q), static_cast<std::int64_t>(rep.len_q_star), rep.d);
    ordered_json w = {{"h", rep.profile->h}, {"zero_star_length", rep.profile->zero_star},
                      {"contradicted", rep.profile->contradicted}};
    if (rep.profile->contradicted) w["reason"] = rep.profile->reason;
    rep.verdicts.push_back(detail::make_verdict("infer_cohomology", !rep.profile->contradicted, w, sop_assumed));
    auto back = coefficients_from_cohomology((*e)[0], rep.profile->h);
    rep.verdicts.push_back(detail::make_verdict("cohomology_roundtrip", back == *e, {{"e", *e}, {"reconstructed", back}},
                                                sop_assumed));
    rep.verdicts.push_back(detail::make_verdict("standard_hilbert_function", rep.ordinary.fitted->n_lo == 1,
                                                {{"first_polynomial_n", rep.ordinary.fitted->n_lo}}, sop_assumed));
  }

  {
    std::vector<std::string> both{"standard_sop", "test_element_generators"};
    if (!A.standard_sop || !A.test_element_generators) {
      rep.verdicts.push_back(detail::skipped("cohomology_prediction", "needs both assumptions", both));
    } else if (!rep.profile || rep.profile->contradicted || !es) {
      rep.verdicts.push_back(detail::skipped("cohomology_prediction", "profile unavailable or contradicted", both));
    } else {
      auto predicted = tight_coefficients_from_cohomology(*rep.profile);
      std::vector<std::int64_t> actual(es->begin() + 1, es->end());
      rep.verdicts.push_back(
          detail::make_verdict("cohomology_prediction", predicted == actual, {{"e_star", actual}, {"predicted", predicted}}, both));
    }
  }

  if (stable && rep.profile && !rep.profile->contradicted) {
    const bool cm = std::all_of(rep.profile->h.begin(), rep.profile->h.end(), [](std::int64_t v) { return v == 0; });
    if (cm) {
      std::vector<bool> closed;
      for (int n = 1; n <= rep.tight.depth(); ++n) {
        closed.push_back(rep.tight.closures[static_cast<std::size_t>(n - 1)].closure == ideal_power(q, n));
      }
      const bool uniform = std::all_of(closed.begin(), closed.end(), [&](bool b) { return b == closed[0]; });
      rep.verdicts.push_back(detail::make_verdict("uniform_closedness", uniform, {{"tightly_closed", closed}}, sop_assumed));
    } else {
      rep.verdicts.push_back(detail::skipped("uniform_closedness", "ring is not Cohen-Macaulay", sop_assumed));
    }
  } else {
    rep.verdicts.push_back(detail::skipped("uniform_closedness", "profile unavailable", sop_assumed));
  }

  rep.frationality = frationality_verdict(e && d >= 1 ? std::optional((*e)[1]) : std::nullopt,
                                          es && d >= 1 ? std::optional((*es)[1]) : std::nullopt, rep.profile, rep.d);

  if (A.ass_primes.size() == 2) {
    std::vector<std::string> assumed{"ass_primes"};
    try {
      auto c = component_pipeline(q, A.ass_primes[0], A.ass_primes[1], depth, stable ? rep.tight.closures
                                                                                      : std::vector<ClosureResult>{});
      bool ok = c.correction_degree_ok && e && c.e0 == (*e)[0];
      ordered_json rows = ordered_json::array();
      for (int m = 1; m <= depth; ++m) {
        const auto mu = static_cast<std::size_t>(m - 1);
        ordered_json row = {{"n", m}, {"correction", c.correction[mu]}, {"predicted", c.predicted[mu]}};
        if (stable) {
          row["closure_length"] = rep.tight.at(m);
          row["closure_matches_intersection"] = static_cast<bool>(c.closure_matches_intersection[mu]);
          ok = ok && c.predicted[mu] == rep.tight.at(m) && c.closure_matches_intersection[mu];
        }
        rows.push_back(row);
      }
      ordered_json w = {{"dim_R_mod_P1_plus_P2", c.intersection_dim},
                        {"component_e0", c.component_e0},
                        {"e0_sum", c.e0},
                        {"correction_degree_at_most_d_minus_2", c.correction_degree_ok},
                        {"predicted_e1_star", 0},
                        {"rows", rows}};
      if (es && d >= 1) {
        w["fitted_e1_star"] = (*es)[1];
        ok = ok && (*es)[1] == 0;
      }
      rep.verdicts.push_back(detail::make_verdict("component_pipeline", ok, w, assumed));
    } catch (const Error& err) {
      auto v = detail::make_verdict("component_pipeline", false, {{"error", to_string(err.code())}, {"message", err.what()}},
                                    assumed);
      rep.verdicts.push_back(v);
    }
  }

  if (config.extension) {
    if (!e || !stable) {
      rep.verdicts.push_back(detail::skipped("extension_compare", "coefficients unavailable"));
    } else {
      auto x = extension_compare(*config.extension, q, rep.tight, (*e)[0]);
      bool nonnegative = std::all_of(x.gap.begin(), x.gap.end(), [](std::int64_t g) { return g >= 0; });
      bool consistent = !x.equality_occurs || rep.frationality.verdict != FRationality::NotFRational;
      ordered_json w = {{"extension", config.extension_name},
                        {"star", x.star},
                        {"bound", x.bound},
                        {"extension_lengths", x.extension},
                        {"gap", x.gap},
                        {"gap_from_n1", x.gap_from_one},
                        {"gap_constant", x.gap_constant},
                        {"equality_with_bound", x.equality_occurs},
                        {"certifies_f_rational", x.equality_occurs}};
      rep.verdicts.push_back(detail::make_verdict("extension_compare", nonnegative && consistent, w));
    }
  }
  return rep;
}

}  // namespace tighthilb
