#ifndef BIOPT_CHECKED_HPP
#define BIOPT_CHECKED_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace biopt {

/** Raised whenever exact 64-bit integer arithmetic would wrap. */
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

}  // namespace biopt

#endif  // BIOPT_CHECKED_HPP
