#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tighthilb/binomial.hpp"
#include "tighthilb/linalg.hpp"
#include "tighthilb/ring.hpp"

namespace tighthilb {

inline constexpr std::size_t kDefaultClosureBudget = 200'000;

/// Cap on the number of distinct monomials of R/I^[q] a membership matrix
/// may touch. TIGHTHILB_BUDGET overrides the default.
inline std::size_t closure_budget() {
  if (const char* env = std::getenv("TIGHTHILB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultClosureBudget;
}

struct TestElement {
  Polynomial c;
  std::string provenance;  // "user-supplied" or "jacobian-hypersurface"
};

/// Wraps a user-supplied c; rejects c that vanishes in R.
inline TestElement make_test_element(const PresentedRing& ring, const Polynomial& c) {
  Polynomial reduced = ring.reduce(c);
  if (reduced.is_zero()) throw Error(ErrorCode::DomainError, "test element is zero in the ring");
  return {reduced, "user-supplied"};
}

/// First partial derivative of the hypersurface equation that is nonzero in R.
inline TestElement jacobian_test_element(const PresentedRing& ring) {
  const auto& j = ring.defining_ideal();
  if (j.size() != 1) throw Error(ErrorCode::DomainError, "jacobian test element needs a hypersurface");
  const Polynomial& f = j.generators()[0];
  for (std::size_t v = 0; v < ring.arity(); ++v) {
    Polynomial d = ring.reduce(partial_derivative(f, v));
    if (!d.is_zero()) return {d, "jacobian-hypersurface"};
  }
  throw Error(ErrorCode::DomainError, "every partial derivative vanishes in the ring");
}

/// c lies outside each supplied prime.
inline bool avoids_primes(const TestElement& c, std::span<const RingIdeal> primes) {
  return std::none_of(primes.begin(), primes.end(), [&](const RingIdeal& p) { return p.contains(c.c); });
}

enum class ClosureStatus { Stabilized, BudgetExhausted };

inline const char* to_string(ClosureStatus s) {
  return s == ClosureStatus::Stabilized ? "STABILIZED" : "BUDGET_EXHAUSTED";
}

struct ClosureResult {
  RingIdeal closure;
  int e_max = 0;
  std::optional<int> stabilized_at;
  ClosureStatus status = ClosureStatus::BudgetExhausted;
  TestElement test_element;
  std::vector<std::size_t> kernel_dims;  // dim W_E for E = 0, 1, ...
  bool ideal_verified = false;           // closure length equals ℓ(R/I) - dim W
  std::uint64_t length = 0;              // ℓ(R/closure)
};

namespace detail {

/// Rows NF(c·b^q) mod I^[q] for each standard monomial b of R/I, as a dense
/// matrix over the columns actually touched.
inline Matrix frobenius_rows(const RingIdeal& ideal, const std::vector<Monomial>& basis, const Polynomial& c,
                             unsigned e, std::size_t budget) {
  const auto& ambient = ideal.ring()->ambient();
  const RingIdeal bracket = bracket_power(ideal, e);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= ambient->characteristic();
  std::unordered_map<Monomial, std::size_t, MonomialHash> columns;
  std::vector<std::vector<std::pair<std::size_t, Coeff>>> sparse(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (q > Monomial::kMaxExponent) throw Error(ErrorCode::DomainError, "Frobenius exponent overflow");
    Polynomial image = bracket.gb().normal_form(c.mul_term(1, basis[i].pow(static_cast<unsigned>(q))));
    for (const Term& t : image.terms()) {
      auto [it, inserted] = columns.emplace(t.monomial, columns.size());
      if (inserted && columns.size() > budget) {
        throw Error(ErrorCode::BudgetExhausted, "membership matrix exceeds the monomial budget");
      }
      sparse[i].emplace_back(it->second, t.coeff);
    }
  }
  Matrix m(basis.size(), columns.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (auto [col, v] : sparse[i]) m(i, col) = v;
  }
  return m;
}

inline Polynomial combination(const RingPtr& ambient, const Coeff* coeffs, const std::vector<Monomial>& basis) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (coeffs[j] != 0) terms.push_back({coeffs[j], basis[j]});
  }
  return Polynomial::from_terms(ambient, std::move(terms));
}

inline std::vector<Monomial> quotient_basis(const RingIdeal& ideal) {
  if (!length(ideal)) throw Error(ErrorCode::NotMPrimary, "ideal is not m-primary");
  return *standard_monomials(ideal.gb());
}

}  // namespace detail

/// Basis (rows, over the standard monomials of R/I) of
/// V_e = {x in R/I : c·x^{p^e} in I^[p^e]}.
inline Matrix membership_space(const RingIdeal& ideal, const TestElement& c, unsigned e,
                               std::size_t budget = closure_budget()) {
  const auto basis = detail::quotient_basis(ideal);
  const auto& k = ideal.ring()->ambient()->field();
  return left_kernel(detail::frobenius_rows(ideal, basis, c.c, e, budget), k);
}

/// Elements of R/I (as polynomials) spanning a subspace given by rows.
inline std::vector<Polynomial> lift_rows(const RingIdeal& ideal, const Matrix& rows) {
  const auto basis = detail::quotient_basis(ideal);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    out.push_back(detail::combination(ideal.ring()->ambient(), rows.row(i), basis));
  }
  return out;
}

/// I* approximated by W_E = V_0 ∩ ... ∩ V_E, stopping once W has been
/// constant for `window` further steps. Contains the c-witnessed closure.
inline ClosureResult star_closure(const RingIdeal& ideal, const TestElement& c, int e_max, int window = 2,
                                  std::size_t budget = closure_budget()) {
  if (e_max < 0) throw Error(ErrorCode::DomainError, "e_max must be non-negative");
  if (window < 1) throw Error(ErrorCode::DomainError, "stability window must be positive");
  ClosureResult result;
  result.e_max = e_max;
  result.test_element = c;
  if (ideal.is_unit()) {
    result.closure = ideal;
    result.stabilized_at = 0;
    result.status = ClosureStatus::Stabilized;
    result.ideal_verified = true;
    return result;
  }
  const auto basis = detail::quotient_basis(ideal);
  const auto& k = ideal.ring()->ambient()->field();
  Matrix w = Matrix::identity(basis.size());
  for (int e = 0; e <= e_max; ++e) {
    Matrix rows;
    try {
      rows = detail::frobenius_rows(ideal, basis, c.c, static_cast<unsigned>(e), budget);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BudgetExhausted) throw;
      break;
    }
    Matrix y = left_kernel(multiply(w, rows, k), k);
    w = multiply(y, w, k);
    row_reduce(w, k);
    result.kernel_dims.push_back(w.rows());
    const auto& dims = result.kernel_dims;
    if (w.rows() == 0) {
      result.stabilized_at = e;
      result.status = ClosureStatus::Stabilized;
      break;
    }
    if (e >= window && std::all_of(dims.end() - window - 1, dims.end(), [&](std::size_t d) { return d == dims.back(); })) {
      result.stabilized_at = e - window;
      result.status = ClosureStatus::Stabilized;
      break;
    }
  }
  std::vector<Polynomial> gens(ideal.generators().begin(), ideal.generators().end());
  if (result.kernel_dims.empty()) w = Matrix(0, basis.size());
  for (std::size_t i = 0; i < w.rows(); ++i) gens.push_back(detail::combination(ideal.ring()->ambient(), w.row(i), basis));
  result.closure = RingIdeal(ideal.ring(), std::move(gens));
  result.length = finite_length(result.closure);
  result.ideal_verified = result.length + w.rows() == basis.size();
  return result;
}

struct StarValue {
  std::uint64_t length = 0;
  ClosureResult closure;
};

/// ℓ(R/(Q^n)*).
inline StarValue star_hilbert_value(const RingIdeal& q, int n, const TestElement& c, int e_max, int window = 2,
                                    std::size_t budget = closure_budget()) {
  if (n < 1) throw Error(ErrorCode::DomainError, "n must be at least 1");
  ClosureResult r = star_closure(ideal_power(q, n), c, e_max, window, budget);
  return {r.length, std::move(r)};
}

struct IntersectionReport {
  int n = 0;
  bool intersection_equal = false;  // Q^n ∩ (Q^{n+1})* = Q^n Q*
  std::uint64_t module_length = 0;  // ℓ(Q^n / Q^n Q*)
  std::uint64_t expected_length = 0;  // ℓ(R/Q*)·C(n+d-1, d-1)
  bool length_equal = false;
  bool holds() const noexcept { return intersection_equal && length_equal; }
};

inline IntersectionReport check_intersection_identity(const RingIdeal& q, int n, const RingIdeal& q_star, const RingIdeal& next_star) {
  IntersectionReport r;
  r.n = n;
  const RingIdeal qn = ideal_power(q, n);
  const RingIdeal product = ideal_product(qn, q_star);
  r.intersection_equal = ideal_intersect(qn, next_star) == product;
  const auto d = static_cast<std::int64_t>(q.ring()->dimension());
  r.module_length = finite_length(product) - finite_length(qn);
  r.expected_length = finite_length(q_star) * static_cast<std::uint64_t>(binomial(n + d - 1, d - 1));
  r.length_equal = r.module_length == r.expected_length;
  return r;
}

struct AberbachReport {
  int n = 0;
  bool equal = false;  // (Q^{n+1})* = Q^n Q*
  std::uint64_t closure_length = 0;
  std::uint64_t product_length = 0;
};

inline AberbachReport aberbach_check(const RingIdeal& q, int n, const RingIdeal& q_star, const RingIdeal& next_star) {
  AberbachReport r;
  r.n = n;
  const RingIdeal product = ideal_product(ideal_power(q, n), q_star);
  r.equal = product == next_star;
  r.closure_length = finite_length(next_star);
  r.product_length = finite_length(product);
  return r;
}

}  // namespace tighthilb
