#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tighthilb/groebner.hpp"
#include "tighthilb/polynomial.hpp"

namespace tighthilb {

/// Combinatorial dimension of ambient/(ideal): the largest set of variables
/// no leading monomial is supported on.
inline std::size_t staircase_dimension(const GroebnerBasis& gb) {
  const std::size_t n = gb.ring()->arity();
  if (gb.is_unit()) return 0;
  std::vector<std::uint32_t> supports;
  for (const auto& m : gb.leading_monomials()) supports.push_back(m.support_mask());
  std::size_t best = 0;
  const std::uint32_t full = (1U << n) - 1U;
  for (std::uint32_t subset = 0; subset <= full; ++subset) {
    auto size = static_cast<std::size_t>(__builtin_popcount(subset));
    if (size <= best) {
      if (subset == full) break;
      continue;
    }
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](std::uint32_t s) { return (s & ~subset) == 0; });
    if (independent) best = size;
    if (subset == full) break;
  }
  return best;
}

/// Default cap on staircase enumeration; guards against runaway inputs.
inline constexpr std::size_t kStaircaseLimit = 5'000'000;

/// Standard monomials (outside the leading-term ideal), ascending in the
/// ring's order; nullopt when the staircase is infinite.
inline std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis& gb,
                                                               std::size_t limit = kStaircaseLimit) {
  const auto& ring = gb.ring();
  const std::size_t n = ring->arity();
  if (gb.is_unit()) return std::vector<Monomial>{};
  const auto leads = gb.leading_monomials();
  for (std::size_t v = 0; v < n; ++v) {
    bool pure = std::any_of(leads.begin(), leads.end(), [&](const Monomial& m) {
      return m[v] > 0 && m.degree() == m[v];
    });
    if (!pure) return std::nullopt;
  }
  auto in_leading_ideal = [&](const Monomial& m) {
    return std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::vector<Monomial> out;
  std::unordered_set<Monomial, MonomialHash> seen;
  std::vector<Monomial> frontier{Monomial(n)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    out.push_back(m);
    if (out.size() > limit) {
      throw Error(ErrorCode::BudgetExhausted, "staircase exceeds " + std::to_string(limit) + " monomials");
    }
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::variable(n, v);
      if (in_leading_ideal(next) || !seen.insert(next).second) continue;
      frontier.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring->order().less(a, b); });
  return out;
}

/// R = F_p[x_1..x_n] / J with J's reduced Gröbner basis and dim R cached.
/// Power-series rings are modelled by this polynomial quotient at the origin.
class PresentedRing {
 public:
  static std::shared_ptr<const PresentedRing> create(RingPtr ambient, std::vector<Polynomial> relations) {
    for (const auto& f : relations) {
      if (!f.ring()->compatible(*ambient)) throw Error(ErrorCode::ArityError, "relation from a different ring");
    }
    GroebnerBasis j = buchberger(ambient, relations);
    if (j.is_unit()) throw Error(ErrorCode::DomainError, "defining ideal is the unit ideal");
    std::size_t d = staircase_dimension(j);
    return std::shared_ptr<const PresentedRing>(new PresentedRing(std::move(ambient), std::move(relations), std::move(j), d));
  }

  const RingPtr& ambient() const noexcept { return ambient_; }
  const GroebnerBasis& defining_ideal() const noexcept { return j_; }
  std::span<const Polynomial> relations() const noexcept { return relations_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::size_t arity() const noexcept { return ambient_->arity(); }
  Coeff characteristic() const noexcept { return ambient_->characteristic(); }

  Polynomial reduce(const Polynomial& f) const { return j_.normal_form(f); }
  Polynomial variable(std::size_t i) const { return Polynomial::variable(ambient_, i); }
  Polynomial variable(const std::string& name) const { return Polynomial::variable(ambient_, name); }
  Polynomial constant(std::int64_t c) const { return Polynomial::constant(ambient_, c); }

  bool is_polynomial_ring() const noexcept { return j_.is_zero_ideal(); }

 private:
  PresentedRing(RingPtr ambient, std::vector<Polynomial> relations, GroebnerBasis j, std::size_t d)
      : ambient_(std::move(ambient)), relations_(std::move(relations)), j_(std::move(j)), dim_(d) {}

  RingPtr ambient_;
  std::vector<Polynomial> relations_;
  GroebnerBasis j_;
  std::size_t dim_;
};

using PresentedRingPtr = std::shared_ptr<const PresentedRing>;

inline std::size_t krull_dim(const PresentedRing& ring) { return ring.dimension(); }

/// An ideal of a presented ring, kept as the user's lifted generators plus
/// the Gröbner basis of (generators + J) in the ambient ring.
class RingIdeal {
 public:
  RingIdeal() = default;

  RingIdeal(PresentedRingPtr ring, std::vector<Polynomial> generators)
      : ring_(std::move(ring)), gens_(std::move(generators)) {
    std::vector<Polynomial> all;
    all.reserve(gens_.size() + ring_->defining_ideal().size());
    for (const auto& g : gens_) {
      if (!g.ring()->compatible(*ring_->ambient())) throw Error(ErrorCode::ArityError, "generator from a different ring");
      all.push_back(g);
    }
    for (const auto& g : ring_->defining_ideal().generators()) all.push_back(g);
    gb_ = buchberger(ring_->ambient(), all);
  }

  const PresentedRingPtr& ring() const noexcept { return ring_; }
  std::span<const Polynomial> generators() const noexcept { return gens_; }
  const GroebnerBasis& gb() const noexcept { return gb_; }

  bool is_unit() const noexcept { return gb_.is_unit(); }
  bool contains(const Polynomial& f) const { return gb_.contains(f); }
  bool contains(const RingIdeal& other) const { return gb_.contains(other.gb_); }

  friend bool operator==(const RingIdeal& a, const RingIdeal& b) { return a.gb_ == b.gb_; }

 private:
  PresentedRingPtr ring_;
  std::vector<Polynomial> gens_;
  GroebnerBasis gb_;
};

inline RingIdeal unit_ideal(const PresentedRingPtr& ring) { return RingIdeal(ring, {ring->constant(1)}); }

inline RingIdeal maximal_ideal(const PresentedRingPtr& ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->arity(); ++i) gens.push_back(ring->variable(i));
  return RingIdeal(ring, std::move(gens));
}

namespace detail {

inline void require_same_ring(const RingIdeal& a, const RingIdeal& b) {
  if (a.ring() != b.ring() &&
      !(a.ring()->ambient()->compatible(*b.ring()->ambient()) &&
        a.ring()->defining_ideal() == b.ring()->defining_ideal())) {
    throw Error(ErrorCode::ArityError, "ideals live in different rings");
  }
}

/// Ambient ring with `extra` new leading variables, eliminated first.
inline RingPtr elimination_ring(const RingPtr& base, const std::vector<std::string>& extra) {
  std::vector<std::string> names = extra;
  names.insert(names.end(), base->names().begin(), base->names().end());
  return PolyRing::create(base->field(), std::move(names), MonomialOrder::block_elimination(extra.size()));
}

/// Generators of (ideal generated by gens) ∩ F_p[last variables], where the
/// first `k` variables of the block order are eliminated.
inline std::vector<Polynomial> eliminate_leading_block(const RingPtr& ring, const std::vector<Polynomial>& gens,
                                                       std::size_t k) {
  GroebnerBasis gb = buchberger(ring, gens);
  std::vector<Polynomial> out;
  for (const auto& g : gb.generators()) {
    bool free = true;
    for (std::size_t v = 0; v < k && free; ++v) free = g.lead_monomial()[v] == 0;
    if (free) out.push_back(g);
  }
  return out;
}

/// Exact division h / f in the polynomial ring.
inline Polynomial divide_exact(const Polynomial& h, const Polynomial& f) {
  Polynomial remainder = h;
  std::vector<Term> quotient;
  const auto& k = f.ring()->field();
  while (!remainder.is_zero()) {
    const Term& lead = remainder.lead_term();
    if (!f.lead_monomial().divides(lead.monomial)) {
      throw Error(ErrorCode::DomainError, "inexact polynomial division");
    }
    Coeff c = k.div(lead.coeff, f.lead_coeff());
    Monomial m = lead.monomial.quotient(f.lead_monomial());
    quotient.push_back({c, m});
    remainder = remainder.sub_mul(c, m, f);
  }
  return Polynomial::from_terms(f.ring(), std::move(quotient));
}

}  // namespace detail

inline RingIdeal ideal_sum(const RingIdeal& a, const RingIdeal& b) {
  detail::require_same_ring(a, b);
  std::vector<Polynomial> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return RingIdeal(a.ring(), std::move(gens));
}

inline RingIdeal ideal_product(const RingIdeal& a, const RingIdeal& b) {
  detail::require_same_ring(a, b);
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) {
      Polynomial h = a.ring()->reduce(f * g);
      if (!h.is_zero()) gens.push_back(std::move(h));
    }
  }
  return RingIdeal(a.ring(), std::move(gens));
}

/// I^n generated by all degree-n products of the generators (reduced mod J).
inline RingIdeal ideal_power(const RingIdeal& ideal, int n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "negative ideal power");
  if (n == 0) return unit_ideal(ideal.ring());
  const auto& ring = ideal.ring();
  std::vector<Polynomial> base;
  for (const auto& g : ideal.generators()) {
    Polynomial h = ring->reduce(g);
    if (!h.is_zero()) base.push_back(h);
  }
  // Multisets of size n over the generators, built by index-monotone extension.
  std::vector<std::pair<Polynomial, std::size_t>> layer;
  for (std::size_t i = 0; i < base.size(); ++i) layer.emplace_back(base[i], i);
  for (int step = 1; step < n; ++step) {
    std::vector<std::pair<Polynomial, std::size_t>> next;
    for (const auto& [f, last] : layer) {
      for (std::size_t i = last; i < base.size(); ++i) next.emplace_back(ring->reduce(f * base[i]), i);
    }
    layer.swap(next);
  }
  std::vector<Polynomial> gens;
  for (auto& [f, last] : layer) {
    if (!f.is_zero()) gens.push_back(std::move(f));
  }
  return RingIdeal(ring, std::move(gens));
}

/// I^[p^e]: Frobenius powers of the stored generator list.
inline RingIdeal bracket_power(const RingIdeal& ideal, unsigned e) {
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(frobenius_power(g, e));
  return RingIdeal(ideal.ring(), std::move(gens));
}

/// I ∩ K via t·(I + J) + (1 - t)·(K + J) with t eliminated.
inline RingIdeal ideal_intersect(const RingIdeal& a, const RingIdeal& b) {
  detail::require_same_ring(a, b);
  const auto& ring = a.ring();
  const RingPtr& base = ring->ambient();
  RingPtr big = detail::elimination_ring(base, {"$t"});
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.gb().generators()) gens.push_back(t * transfer(g, big));
  for (const auto& g : b.gb().generators()) gens.push_back(one_minus_t * transfer(g, big));
  std::vector<Polynomial> result;
  for (const auto& g : detail::eliminate_leading_block(big, gens, 1)) {
    // Drop the (zero) t-exponent by transferring through names.
    std::vector<Term> terms;
    for (const Term& term : g.terms()) {
      Monomial m(base->arity());
      for (std::size_t i = 0; i < base->arity(); ++i) m.set(i, term.monomial[i + 1]);
      terms.push_back({term.coeff, m});
    }
    result.push_back(Polynomial::from_terms(base, std::move(terms)));
  }
  return RingIdeal(ring, std::move(result));
}

/// I : f = {g : g f ∈ I}, computed from ((I + J) ∩ (f)) / f.
inline RingIdeal ideal_quotient(const RingIdeal& ideal, const Polynomial& f) {
  const auto& ring = ideal.ring();
  Polynomial fr = ring->reduce(f);
  if (fr.is_zero()) throw Error(ErrorCode::DomainError, "colon by an element that is zero in R");
  auto free_ring = PresentedRing::create(ring->ambient(), {});
  RingIdeal lifted(free_ring, std::vector<Polynomial>(ideal.gb().generators().begin(), ideal.gb().generators().end()));
  RingIdeal principal(free_ring, {fr});
  RingIdeal meet = ideal_intersect(lifted, principal);
  std::vector<Polynomial> gens;
  for (const auto& h : meet.gb().generators()) gens.push_back(detail::divide_exact(h, fr));
  return RingIdeal(ring, std::move(gens));
}

/// I : K as the intersection of I : k over the generators of K.
inline RingIdeal ideal_quotient(const RingIdeal& ideal, const RingIdeal& other) {
  detail::require_same_ring(ideal, other);
  std::optional<RingIdeal> result;
  for (const auto& k : other.generators()) {
    if (ideal.ring()->reduce(k).is_zero()) continue;
    RingIdeal part = ideal_quotient(ideal, k);
    result = result ? ideal_intersect(*result, part) : part;
  }
  return result ? *result : unit_ideal(ideal.ring());
}

/// ℓ(R/I) as the number of standard monomials, or nullopt when R/I has
/// infinite length. Throws NOT_M_PRIMARY when R/I is finite but supported
/// away from the origin (some variable is not nilpotent modulo I).
inline std::optional<std::uint64_t> length(const RingIdeal& ideal, std::size_t limit = kStaircaseLimit) {
  const auto& gb = ideal.gb();
  auto basis = standard_monomials(gb, limit);
  if (!basis) return std::nullopt;
  const std::size_t len = basis->size();
  if (len == 0) return 0;
  const auto& ambient = ideal.ring()->ambient();
  for (std::size_t v = 0; v < ambient->arity(); ++v) {
    Polynomial x = Polynomial::variable(ambient, v);
    Polynomial power = gb.normal_form(x);
    // A nilpotent operator on a space of dimension len satisfies x^len = 0.
    for (std::size_t k = 1; k < len && !power.is_zero(); ++k) power = gb.normal_form(power * x);
    if (!power.is_zero()) {
      throw Error(ErrorCode::NotMPrimary, "variable " + ambient->names()[v] + " is not nilpotent modulo the ideal");
    }
  }
  return len;
}

inline std::uint64_t finite_length(const RingIdeal& ideal, std::size_t limit = kStaircaseLimit) {
  auto len = length(ideal, limit);
  if (!len) throw Error(ErrorCode::NotMPrimary, "quotient has infinite length");
  return *len;
}

/// R / I as a presented ring (same ambient, defining ideal I + J).
inline PresentedRingPtr quotient_ring(const RingIdeal& ideal) {
  const auto& g = ideal.gb().generators();
  return PresentedRing::create(ideal.ring()->ambient(), std::vector<Polynomial>(g.begin(), g.end()));
}

/// Moves an ideal of R to a ring with the same ambient and a larger J.
inline RingIdeal extend_to(const RingIdeal& ideal, const PresentedRingPtr& ring) {
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(transfer(g, ring->ambient()));
  return RingIdeal(ring, std::move(gens));
}

/// Canonical text: the reduced Gröbner basis of (generators + J).
inline std::string format(const RingIdeal& ideal) {
  std::string out = "(";
  bool first = true;
  for (const auto& g : ideal.gb().generators()) {
    if (!first) out += ", ";
    first = false;
    out += format(g);
  }
  return out + ")";
}

/// Rank over Q of an integer matrix (fraction-free elimination).
inline std::size_t integer_rank(std::vector<std::vector<std::int64_t>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const __int128 a = rows[rank][c], b = rows[r][c];
      std::int64_t g = 0;
      for (std::size_t k = 0; k < cols; ++k) {
        __int128 v = a * rows[r][k] - b * rows[rank][k];
        rows[r][k] = static_cast<std::int64_t>(v);
      }
      for (auto v : rows[r]) g = std::gcd(g, v < 0 ? -v : v);
      if (g > 1) {
        for (auto& v : rows[r]) v /= g;
      }
    }
    ++rank;
  }
  return rank;
}

/// Presentation F_p[t_1..t_s]/ker of the subring generated by monomials
/// x^{m_i} in source variables, by eliminating the sources from (t_i - x^{m_i}).
inline PresentedRingPtr toric_presentation(const PrimeField& field,
                                           const std::vector<std::vector<unsigned>>& exponents,
                                           std::vector<std::string> target_names = {},
                                           std::vector<std::string> source_names = {}) {
  if (exponents.empty()) throw Error(ErrorCode::DomainError, "no monomial generators");
  const std::size_t sources = exponents.front().size();
  for (const auto& e : exponents) {
    if (e.size() != sources) throw Error(ErrorCode::ArityError, "monomial generators of different arity");
    if (std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; })) {
      throw Error(ErrorCode::DomainError, "monomial generator equal to 1");
    }
  }
  if (target_names.empty()) {
    for (std::size_t i = 0; i < exponents.size(); ++i) target_names.push_back("t" + std::to_string(i + 1));
  }
  if (source_names.empty()) {
    for (std::size_t i = 0; i < sources; ++i) source_names.push_back("$x" + std::to_string(i + 1));
  }
  if (target_names.size() != exponents.size()) throw Error(ErrorCode::ArityError, "target name count mismatch");
  std::vector<std::string> names = source_names;
  names.insert(names.end(), target_names.begin(), target_names.end());
  RingPtr big = PolyRing::create(field, names, MonomialOrder::block_elimination(sources));
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    Monomial m(big->arity());
    for (std::size_t v = 0; v < sources; ++v) m.set(v, exponents[i][v]);
    gens.push_back(Polynomial::variable(big, sources + i) - Polynomial::monomial(big, 1, m));
  }
  RingPtr target = PolyRing::create(field, target_names);
  std::vector<Polynomial> relations;
  for (const auto& g : detail::eliminate_leading_block(big, gens, sources)) {
    std::vector<Term> terms;
    for (const Term& term : g.terms()) {
      Monomial m(target->arity());
      for (std::size_t i = 0; i < target->arity(); ++i) m.set(i, term.monomial[sources + i]);
      terms.push_back({term.coeff, m});
    }
    relations.push_back(Polynomial::from_terms(target, std::move(terms)));
  }
  auto ring = PresentedRing::create(target, std::move(relations));
  std::vector<std::vector<std::int64_t>> matrix;
  for (const auto& e : exponents) matrix.emplace_back(e.begin(), e.end());
  if (integer_rank(matrix) != ring->dimension()) {
    throw Error(ErrorCode::DomainError, "toric dimension disagrees with the exponent lattice rank");
  }
  return ring;
}

/// A ring map R -> S given by the images of R's variables. Construction
/// checks that J_R is sent into J_S.
class RingMap {
 public:
  RingMap(PresentedRingPtr source, PresentedRingPtr target, std::vector<Polynomial> images)
      : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->arity()) throw Error(ErrorCode::ArityError, "one image per source variable required");
    if (source_->characteristic() != target_->characteristic()) {
      throw Error(ErrorCode::CharacteristicMismatch, "ring map between different characteristics");
    }
    for (auto& h : images_) {
      if (!h.ring()->compatible(*target_->ambient())) throw Error(ErrorCode::ArityError, "image not in target ring");
      h = target_->reduce(h);
    }
    for (const auto& r : source_->defining_ideal().generators()) {
      if (!apply(r).is_zero()) throw Error(ErrorCode::DomainError, "map does not send J_R into J_S");
    }
  }

  static RingMap identity(const PresentedRingPtr& ring) {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < ring->arity(); ++i) images.push_back(ring->variable(i));
    return RingMap(ring, ring, std::move(images));
  }

  const PresentedRingPtr& source() const noexcept { return source_; }
  const PresentedRingPtr& target() const noexcept { return target_; }
  std::span<const Polynomial> images() const noexcept { return images_; }

  Polynomial apply(const Polynomial& f) const {
    const auto& tgt = target_->ambient();
    Polynomial out(tgt);
    std::map<std::pair<std::size_t, unsigned>, Polynomial> powers;
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
      auto key = std::make_pair(v, e);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, target_->reduce(images_[v].pow(e))).first;
      return it->second;
    };
    for (const Term& t : f.terms()) {
      Polynomial term = Polynomial::constant(tgt, t.coeff);
      for (std::size_t v = 0; v < f.ring()->arity(); ++v) {
        if (t.monomial[v] != 0) term = target_->reduce(term * power(v, t.monomial[v]));
      }
      out = out + term;
    }
    return target_->reduce(out);
  }

  RingIdeal extend(const RingIdeal& ideal) const {
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(apply(g));
    return RingIdeal(target_, std::move(gens));
  }

 private:
  PresentedRingPtr source_;
  PresentedRingPtr target_;
  std::vector<Polynomial> images_;
};

/// ℓ_S(S / (I S)^n).
inline std::uint64_t extension_length(const RingMap& map, const RingIdeal& ideal, int n) {
  if (n == 0) return 0;
  return finite_length(ideal_power(map.extend(ideal), n));
}

}  // namespace tighthilb
