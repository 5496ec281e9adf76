#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>

#include "tighthilb/error.hpp"

namespace tighthilb {

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector of fixed arity (at most kMaxVariables).
class Monomial {
 public:
  using Exponent = std::uint16_t;
  static constexpr unsigned kMaxExponent = 0xFFFF;

  Monomial() = default;

  explicit Monomial(std::size_t arity) : arity_(check_arity(arity)) {}

  Monomial(std::initializer_list<unsigned> exponents) : arity_(check_arity(exponents.size())) {
    std::size_t i = 0;
    for (unsigned e : exponents) set(i++, e);
  }

  static Monomial from_exponents(std::span<const unsigned> exponents) {
    Monomial m(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i) m.set(i, exponents[i]);
    return m;
  }

  static Monomial variable(std::size_t arity, std::size_t index, unsigned power = 1) {
    Monomial m(arity);
    m.set(index, power);
    return m;
  }

  std::size_t arity() const noexcept { return arity_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }
  bool is_one() const noexcept { return degree_ == 0; }

  void set(std::size_t i, unsigned e) {
    if (e > kMaxExponent) throw Error(ErrorCode::DomainError, "exponent overflow");
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<Exponent>(e);
  }

  /// Bit i set iff variable i occurs; used as a cheap divisibility pre-filter.
  std::uint32_t support_mask() const noexcept {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (exps_[i] != 0) mask |= (1U << i);
    }
    return mask;
  }

  bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
  }

  bool coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < arity_; ++i) {
      if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    }
    return true;
  }

  /// Requires divisor.divides(*this).
  Monomial quotient(const Monomial& divisor) const noexcept {
    Monomial m(*this);
    for (std::size_t i = 0; i < arity_; ++i) m.exps_[i] = static_cast<Exponent>(exps_[i] - divisor.exps_[i]);
    m.degree_ = degree_ - divisor.degree_;
    return m;
  }

  Monomial lcm(const Monomial& other) const noexcept {
    Monomial m(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      m.exps_[i] = std::max(exps_[i], other.exps_[i]);
      m.degree_ += m.exps_[i];
    }
    return m;
  }

  Monomial gcd(const Monomial& other) const noexcept {
    Monomial m(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      m.exps_[i] = std::min(exps_[i], other.exps_[i]);
      m.degree_ += m.exps_[i];
    }
    return m;
  }

  Monomial pow(unsigned k) const {
    Monomial m(arity_);
    for (std::size_t i = 0; i < arity_; ++i) {
      std::uint64_t e = std::uint64_t{exps_[i]} * k;
      if (e > kMaxExponent) throw Error(ErrorCode::DomainError, "exponent overflow");
      m.set(i, static_cast<unsigned>(e));
    }
    return m;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.arity_ != b.arity_) throw Error(ErrorCode::ArityError, "monomial arity mismatch");
    Monomial m(a.arity_);
    for (std::size_t i = 0; i < a.arity_; ++i) m.set(i, unsigned{a.exps_[i]} + b.exps_[i]);
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.arity_ == b.arity_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = arity_;
    for (std::size_t i = 0; i < arity_; ++i) h = h * 1000003U ^ exps_[i];
    return h;
  }

 private:
  static std::uint8_t check_arity(std::size_t arity) {
    if (arity > kMaxVariables) {
      throw Error(ErrorCode::ArityError, "at most " + std::to_string(kMaxVariables) + " variables supported");
    }
    return static_cast<std::uint8_t>(arity);
  }

  std::array<Exponent, kMaxVariables> exps_{};
  std::uint32_t degree_ = 0;
  std::uint8_t arity_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Global monomial orders. BlockElimination(k) compares the first k variables
/// by grevlex and breaks ties by grevlex on the remaining ones.
class MonomialOrder {
 public:
  enum class Kind { Grevlex, Lex, BlockElimination };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::Grevlex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder block_elimination(std::size_t k) { return MonomialOrder(Kind::BlockElimination, k); }

  Kind kind() const noexcept { return kind_; }
  std::size_t block_size() const noexcept { return block_; }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (kind_) {
      case Kind::Grevlex:
        return grevlex_range(a, b, 0, a.arity());
      case Kind::Lex:
        for (std::size_t i = 0; i < a.arity(); ++i) {
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        }
        return 0;
      case Kind::BlockElimination: {
        std::size_t k = std::min(block_, a.arity());
        if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
        return grevlex_range(a, b, k, a.arity());
      }
    }
    return 0;
  }

  bool less(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) < 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::Grevlex: return "grevlex";
      case Kind::Lex: return "lex";
      case Kind::BlockElimination: return "block-elimination(" + std::to_string(block_) + ")";
    }
    return "";
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}

  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) noexcept {
    unsigned da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  std::size_t block_;
};

}  // namespace tighthilb
