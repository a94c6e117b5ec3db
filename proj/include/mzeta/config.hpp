#pragma once

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mzeta {

class PrecisionUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientPrecision : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument lies on a polar hyperplane.
class PolarPoint : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A reciprocal factor came within tolerance of zero.
class PoleProximity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Limits {
  std::atomic<unsigned long> max_n{1ul << 20};
  std::atomic<unsigned> depth_cap{4};
  std::atomic<unsigned> degree_cap{8};
  std::atomic<unsigned> max_digits{50};
};

inline Limits& limits() {
  static Limits l;
  return l;
}

/// Applies MZETA_MAX_N when set to a positive integer.
inline void load_env_limits() {
  if (const char* v = std::getenv("MZETA_MAX_N")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(v, &end, 10);
    if (end != v && *end == '\0' && n >= 4) limits().max_n = n;
  }
}

}  // namespace mzeta
