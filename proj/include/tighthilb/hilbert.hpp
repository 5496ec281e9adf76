#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tighthilb/binomial.hpp"
#include "tighthilb/tight_closure.hpp"

namespace tighthilb {

enum class TableKind { Ordinary, Tight };

inline const char* to_string(TableKind k) { return k == TableKind::Ordinary ? "ORDINARY" : "TIGHT"; }

/// Coefficients e_0..e_d and the range of n where the table equals
/// P(n) = Σ (-1)^i e_i C(n+d-1-i, d-i).
struct Fit {
  std::vector<std::int64_t> e;
  int n_lo = 0;
  int n_hi = 0;
};

struct HilbertTable {
  TableKind kind = TableKind::Ordinary;
  std::size_t d = 0;
  std::vector<std::uint64_t> values;       // values[n - 1] = ℓ(R/I^n) or ℓ(R/(I^n)*)
  std::vector<ClosureResult> closures;     // TIGHT only, closures[n - 1] = (Q^n)*
  std::optional<Fit> fitted;
  std::string fit_error;                   // empty, NO_STABLE_WINDOW or BUDGET_EXHAUSTED

  int depth() const noexcept { return static_cast<int>(values.size()); }
  std::uint64_t at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
  bool all_stabilized() const {
    return std::all_of(closures.begin(), closures.end(),
                       [](const ClosureResult& c) { return c.status == ClosureStatus::Stabilized; });
  }
};

inline std::int64_t hilbert_polynomial(const std::vector<std::int64_t>& e, std::int64_t n) {
  const auto d = static_cast<std::int64_t>(e.size()) - 1;
  std::int64_t total = 0;
  for (std::int64_t i = 0; i <= d; ++i) {
    const std::int64_t term = e[static_cast<std::size_t>(i)] * binomial(n + d - 1 - i, d - i);
    total += (i % 2 == 0) ? term : -term;
  }
  return total;
}

/// Exact fit in the binomial basis on the last d+1 values, extended down
/// as far as the values keep agreeing. Needs at least d+2 agreeing values.
inline Fit fit_coefficients(const std::vector<std::uint64_t>& values, std::size_t d) {
  const int N = static_cast<int>(values.size());
  const int di = static_cast<int>(d);
  if (N < di + 2) throw Error(ErrorCode::NoStableWindow, "table shorter than d + 2");
  const int n0 = N - di;
  // diff[j] = Δ^j P(n0).
  std::vector<std::int64_t> row;
  for (int n = n0; n <= N; ++n) row.push_back(static_cast<std::int64_t>(values[static_cast<std::size_t>(n - 1)]));
  std::vector<std::int64_t> diff;
  for (int j = 0; j <= di; ++j) {
    diff.push_back(row.front());
    for (std::size_t t = 0; t + 1 < row.size(); ++t) row[t] = row[t + 1] - row[t];
    row.pop_back();
  }
  // Δ^{d-i} P(n0) = Σ_{k<=i} (-1)^k e_k C(n0+d-1-k, i-k).
  std::vector<std::int64_t> e(d + 1, 0);
  for (int i = 0; i <= di; ++i) {
    std::int64_t rest = diff[static_cast<std::size_t>(di - i)];
    for (int k = 0; k < i; ++k) {
      const std::int64_t term = e[static_cast<std::size_t>(k)] * binomial(n0 + di - 1 - k, i - k);
      rest -= (k % 2 == 0) ? term : -term;
    }
    e[static_cast<std::size_t>(i)] = (i % 2 == 0) ? rest : -rest;
  }
  int n_lo = N;
  while (n_lo > 1 && hilbert_polynomial(e, n_lo - 1) == static_cast<std::int64_t>(values[static_cast<std::size_t>(n_lo - 2)])) {
    --n_lo;
  }
  for (int n = n_lo; n <= N; ++n) {
    if (hilbert_polynomial(e, n) != static_cast<std::int64_t>(values[static_cast<std::size_t>(n - 1)])) {
      throw Error(ErrorCode::NoStableWindow, "fitted polynomial does not reproduce the table");
    }
  }
  if (N - n_lo + 1 < di + 2) throw Error(ErrorCode::NoStableWindow, "no window of d + 2 values on one polynomial");
  return {std::move(e), n_lo, N};
}

namespace detail {

inline void require_depth(const RingIdeal& q, int depth) {
  if (depth < static_cast<int>(q.ring()->dimension()) + 2) {
    throw Error(ErrorCode::DomainError, "table depth must be at least d + 2");
  }
}

inline void try_fit(HilbertTable& table) {
  try {
    table.fitted = fit_coefficients(table.values, table.d);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoStableWindow) throw;
    table.fit_error = to_string(e.code());
  }
}

}  // namespace detail

/// ℓ(R/Q^n) for n = 1..depth.
inline HilbertTable hilbert_table(const RingIdeal& q, int depth) {
  detail::require_depth(q, depth);
  HilbertTable table;
  table.kind = TableKind::Ordinary;
  table.d = q.ring()->dimension();
  for (int n = 1; n <= depth; ++n) table.values.push_back(finite_length(ideal_power(q, n)));
  detail::try_fit(table);
  return table;
}

/// ℓ(R/(Q^n)*) for n = 1..depth. Coefficients are withheld unless every
/// closure stabilized.
inline HilbertTable tight_hilbert_table(const RingIdeal& q, int depth, const TestElement& c, int e_max, int window = 2,
                                        std::size_t budget = closure_budget()) {
  detail::require_depth(q, depth);
  HilbertTable table;
  table.kind = TableKind::Tight;
  table.d = q.ring()->dimension();
  for (int n = 1; n <= depth; ++n) {
    auto v = star_hilbert_value(q, n, c, e_max, window, budget);
    table.values.push_back(v.length);
    table.closures.push_back(std::move(v.closure));
  }
  if (!table.all_stabilized()) {
    table.fit_error = "BUDGET_EXHAUSTED";
  } else {
    detail::try_fit(table);
  }
  return table;
}

/// e_0(Q) from the ordinary table.
inline std::int64_t multiplicity(const RingIdeal& q, int depth = -1) {
  if (depth < 0) depth = static_cast<int>(q.ring()->dimension()) + 6;
  auto table = hilbert_table(q, depth);
  if (!table.fitted) throw Error(ErrorCode::NoStableWindow, "ordinary Hilbert function did not stabilize");
  const std::int64_t e0 = table.fitted->e[0];
  if (e0 < 1 || e0 > static_cast<std::int64_t>(table.at(1))) {
    throw Error(ErrorCode::DomainError, "multiplicity outside [1, l(R/Q)]");
  }
  return e0;
}

}  // namespace tighthilb
