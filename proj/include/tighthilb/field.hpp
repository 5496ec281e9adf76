#pragma once

#include <cstdint>
#include <string>

#include "tighthilb/error.hpp"

namespace tighthilb {

/// Coefficient of F_p, always kept in [0, p).
using Coeff = std::uint32_t;

/// Deterministic primality test by trial division; p is at most 2^31 - 1.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// The prime field F_p.
class PrimeField {
 public:
  static constexpr std::uint64_t kMaxCharacteristic = (std::uint64_t{1} << 31) - 1;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<Coeff>(p)) {
    if (p > kMaxCharacteristic) {
      throw Error(ErrorCode::DomainError,
                  "characteristic " + std::to_string(p) + " exceeds 2^31-1");
    }
    if (!is_prime(p)) {
      throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    }
  }

  Coeff characteristic() const noexcept { return p_; }

  Coeff reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }

  Coeff add(Coeff a, Coeff b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Coeff>(s >= p_ ? s - p_ : s);
  }

  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + (p_ - b); }

  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }

  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>((std::uint64_t{a} * b) % p_);
  }

  Coeff pow(Coeff a, std::uint64_t k) const noexcept {
    Coeff result = 1 % p_;
    Coeff base = a;
    while (k > 0) {
      if (k & 1U) result = mul(result, base);
      base = mul(base, base);
      k >>= 1U;
    }
    return result;
  }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  Coeff inv(Coeff a) const {
    if (a % p_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in F_p");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return reduce(t);
  }

  Coeff div(Coeff a, Coeff b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Coeff p_;
};

}  // namespace tighthilb
