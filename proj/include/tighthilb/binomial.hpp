#pragma once

#include <cstdint>

#include "tighthilb/error.hpp"

namespace tighthilb {

/// Generalized binomial C(n, k) = n(n-1)...(n-k+1)/k! for k >= 0, with
/// C(n, -1) = 1 iff n = -1 and C(n, k) = 0 for k < -1.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k == -1) return n == -1 ? 1 : 0;
  if (k < 0) return 0;
  if (n >= 0 && k > n) return 0;
  if (n >= 0 && k > n - k) k = n - k;
  __int128 result = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    result = result * (n - i) / (i + 1);
    if (result > INT64_MAX || result < INT64_MIN) throw Error(ErrorCode::DomainError, "binomial overflow");
  }
  return static_cast<std::int64_t>(result);
}

}  // namespace tighthilb
