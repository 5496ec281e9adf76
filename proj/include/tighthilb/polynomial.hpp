#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tighthilb/error.hpp"
#include "tighthilb/field.hpp"
#include "tighthilb/monomial.hpp"

namespace tighthilb {

class Polynomial;

/// F_p[x_1..x_n] with a fixed monomial order. Shared by every polynomial
/// that lives in it; immutable after creation.
class PolyRing {
 public:
  static std::shared_ptr<const PolyRing> create(PrimeField field, std::vector<std::string> names,
                                                MonomialOrder order = MonomialOrder::grevlex()) {
    if (names.size() > kMaxVariables) {
      throw Error(ErrorCode::ArityError, "at most " + std::to_string(kMaxVariables) + " variables supported");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) throw Error(ErrorCode::DomainError, "duplicate variable name '" + names[i] + "'");
      }
    }
    return std::shared_ptr<const PolyRing>(new PolyRing(field, std::move(names), order));
  }

  const PrimeField& field() const noexcept { return field_; }
  Coeff characteristic() const noexcept { return field_.characteristic(); }
  std::size_t arity() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const MonomialOrder& order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  /// Same field, variables and order: polynomials may be mixed freely.
  bool compatible(const PolyRing& other) const noexcept {
    return this == &other || (field_ == other.field_ && names_ == other.names_ && order_ == other.order_);
  }

 private:
  PolyRing(PrimeField field, std::vector<std::string> names, MonomialOrder order)
      : field_(field), names_(std::move(names)), order_(order) {}

  PrimeField field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

struct Term {
  Coeff coeff;
  Monomial monomial;

  friend bool operator==(const Term& a, const Term& b) noexcept {
    return a.coeff == b.coeff && a.monomial == b.monomial;
  }
};

/// Sparse polynomial; terms are kept strictly descending under the ring's
/// order with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  /// Normalizes arbitrary input terms (sorting, combining, dropping zeros).
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial f(std::move(ring));
    for (const Term& t : terms) {
      if (t.monomial.arity() != f.ring_->arity()) throw Error(ErrorCode::ArityError, "term arity mismatch");
    }
    const auto& order = f.ring_->order();
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
    const auto& k = f.ring_->field();
    for (const Term& t : terms) {
      if (!f.terms_.empty() && f.terms_.back().monomial == t.monomial) {
        f.terms_.back().coeff = k.add(f.terms_.back().coeff, t.coeff % k.characteristic());
      } else {
        f.terms_.push_back({static_cast<Coeff>(t.coeff % k.characteristic()), t.monomial});
      }
      if (f.terms_.back().coeff == 0) f.terms_.pop_back();
    }
    return f;
  }

  static Polynomial constant(RingPtr ring, std::int64_t c) {
    Coeff v = ring->field().reduce(c);
    Polynomial f(ring);
    if (v != 0) f.terms_.push_back({v, Monomial(ring->arity())});
    return f;
  }

  static Polynomial monomial(RingPtr ring, Coeff c, Monomial m) {
    if (m.arity() != ring->arity()) throw Error(ErrorCode::ArityError, "monomial arity mismatch");
    Polynomial f(ring);
    c %= ring->characteristic();
    if (c != 0) f.terms_.push_back({c, m});
    return f;
  }

  static Polynomial variable(RingPtr ring, std::size_t index) {
    std::size_t n = ring->arity();
    return monomial(std::move(ring), 1, Monomial::variable(n, index));
  }

  static Polynomial variable(RingPtr ring, const std::string& name) {
    auto index = ring->index_of(name);
    if (!index) throw Error(ErrorCode::UndefinedIdentifier, "unknown variable '" + name + "'");
    return variable(std::move(ring), *index);
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }

  const Term& lead_term() const { return require_nonzero().terms_.front(); }
  const Monomial& lead_monomial() const { return lead_term().monomial; }
  Coeff lead_coeff() const { return lead_term().coeff; }

  /// Largest total degree of a term; zero polynomial has degree 0.
  unsigned degree() const noexcept {
    unsigned d = 0;
    for (const Term& t : terms_) d = std::max(d, t.monomial.degree());
    return d;
  }

  bool is_homogeneous() const noexcept {
    for (const Term& t : terms_) {
      if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
    }
    return true;
  }

  Polynomial scaled(Coeff c) const {
    const auto& k = ring_->field();
    c %= k.characteristic();
    Polynomial f(ring_);
    if (c == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const Term& t : terms_) f.terms_.push_back({k.mul(t.coeff, c), t.monomial});
    return f;
  }

  /// c * m * this; order is preserved because monomial orders are multiplicative.
  Polynomial mul_term(Coeff c, const Monomial& m) const {
    const auto& k = ring_->field();
    Polynomial f(ring_);
    if (c % k.characteristic() == 0) return f;
    f.terms_.reserve(terms_.size());
    for (const Term& t : terms_) f.terms_.push_back({k.mul(t.coeff, c), t.monomial * m});
    return f;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field().inv(lead_coeff()));
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(ring_, 1);
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  Polynomial operator-() const { return scaled(ring_->field().neg(1)); }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    check_compatible(f, g);
    return combine(f, g, 1);
  }

  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    check_compatible(f, g);
    return combine(f, g, f.ring_->field().neg(1));
  }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_compatible(f, g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.ring_);
    std::vector<Term> products;
    products.reserve(f.size() * g.size());
    const auto& k = f.ring_->field();
    for (const Term& a : f.terms_) {
      for (const Term& b : g.terms_) products.push_back({k.mul(a.coeff, b.coeff), a.monomial * b.monomial});
    }
    return from_terms(f.ring_, std::move(products));
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (f.ring_ && g.ring_ && !f.ring_->compatible(*g.ring_)) return false;
    return f.terms_ == g.terms_;
  }

  /// this - c * m * g, merging in one pass. Used by reduction.
  Polynomial sub_mul(Coeff c, const Monomial& m, const Polynomial& g) const {
    return combine(*this, g.mul_term(c, m), ring_->field().neg(1));
  }

 private:
  const Polynomial& require_nonzero() const {
    if (terms_.empty()) throw Error(ErrorCode::DomainError, "leading term of the zero polynomial");
    return *this;
  }

  static void check_compatible(const Polynomial& f, const Polynomial& g) {
    if (!f.ring_ || !g.ring_) throw Error(ErrorCode::ArityError, "polynomial without a ring");
    if (!f.ring_->compatible(*g.ring_)) {
      throw Error(ErrorCode::ArityError, "polynomials live in different rings");
    }
  }

  /// f + scale * g by merging two descending term lists.
  static Polynomial combine(const Polynomial& f, const Polynomial& g, Coeff scale) {
    const auto& k = f.ring_->field();
    const auto& order = f.ring_->order();
    Polynomial h(f.ring_);
    h.terms_.reserve(f.size() + g.size());
    std::size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
      int c;
      if (i == f.terms_.size()) {
        c = -1;
      } else if (j == g.terms_.size()) {
        c = 1;
      } else {
        c = order.compare(f.terms_[i].monomial, g.terms_[j].monomial);
      }
      if (c > 0) {
        h.terms_.push_back(f.terms_[i++]);
      } else if (c < 0) {
        Coeff v = k.mul(g.terms_[j].coeff, scale);
        if (v != 0) h.terms_.push_back({v, g.terms_[j].monomial});
        ++j;
      } else {
        Coeff v = k.add(f.terms_[i].coeff, k.mul(g.terms_[j].coeff, scale));
        if (v != 0) h.terms_.push_back({v, f.terms_[i].monomial});
        ++i;
        ++j;
      }
    }
    return h;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// f^(p^e). Coefficients in F_p are fixed by Frobenius, so each term is
/// raised to the p^e-th power independently.
inline Polynomial frobenius_power(const Polynomial& f, unsigned e) {
  std::uint64_t q = 1;
  const std::uint64_t p = f.ring()->characteristic();
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > Monomial::kMaxExponent) {
      if (f.is_constant()) {
        q = Monomial::kMaxExponent;  // monomial 1 stays 1; coefficients are fixed
        break;
      }
      throw Error(ErrorCode::DomainError, "Frobenius exponent p^e too large");
    }
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const Term& t : f.terms()) terms.push_back({t.coeff, t.monomial.pow(static_cast<unsigned>(q))});
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

/// Formal partial derivative with respect to variable `index`.
inline Polynomial partial_derivative(const Polynomial& f, std::size_t index) {
  const auto& k = f.ring()->field();
  std::vector<Term> terms;
  for (const Term& t : f.terms()) {
    unsigned e = t.monomial[index];
    if (e == 0) continue;
    Coeff c = k.mul(t.coeff, k.reduce(e));
    if (c == 0) continue;
    Monomial m = t.monomial;
    m.set(index, e - 1);
    terms.push_back({c, m});
  }
  return Polynomial::from_terms(f.ring(), std::move(terms));
}

/// Re-expresses f in a compatible-by-name ring (possibly with another order
/// or more variables). Every variable of f's ring must exist in `target`.
inline Polynomial transfer(const Polynomial& f, const RingPtr& target) {
  const auto& names = f.ring()->names();
  std::vector<std::size_t> index(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto j = target->index_of(names[i]);
    if (!j) throw Error(ErrorCode::UndefinedIdentifier, "variable '" + names[i] + "' missing in target ring");
    index[i] = *j;
  }
  if (target->characteristic() != f.ring()->characteristic()) {
    throw Error(ErrorCode::CharacteristicMismatch, "rings have different characteristics");
  }
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const Term& t : f.terms()) {
    Monomial m(target->arity());
    for (std::size_t i = 0; i < names.size(); ++i) m.set(index[i], t.monomial[i]);
    terms.push_back({t.coeff, m});
  }
  return Polynomial::from_terms(target, std::move(terms));
}

/// Canonical text form: descending terms, coefficients printed in the
/// symmetric range (-p/2, p/2], e.g. `3*x^2*y - z + 1`.
inline std::string format_monomial(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

inline std::string format(const Polynomial& f) {
  if (f.is_zero()) return "0";
  const Coeff p = f.ring()->characteristic();
  std::string out;
  bool first = true;
  for (const Term& t : f.terms()) {
    bool negative = p > 2 && t.coeff > p / 2;
    Coeff magnitude = negative ? p - t.coeff : t.coeff;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.monomial.is_one()) {
      out += std::to_string(magnitude);
    } else {
      if (magnitude != 1) out += std::to_string(magnitude) + '*';
      out += format_monomial(t.monomial, f.ring()->names());
    }
  }
  return out;
}

}  // namespace tighthilb
