#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ietlab {

using Integer = mpz_class;
using Rational = mpq_class;

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CheckFailure : public Error {
 public:
  using Error::Error;
};

class LimitError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw PreconditionError(msg);
}

Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
Rational abs_q(const Rational& q);
Integer gcd_z(const Integer& a, const Integer& b);
Integer lcm_z(const Integer& a, const Integer& b);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view s);

// Fits in int64 (throws LimitError otherwise).
std::int64_t to_i64(const Integer& z);
bool fits_i64(const Integer& z);

// Exact conversion of a double to a rational.
Rational from_double(double x);

}  // namespace ietlab
