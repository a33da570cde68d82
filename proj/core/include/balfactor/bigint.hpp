#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace balfactor {

// Arbitrary-precision integer for values that outgrow 64 bits:
// embedding error terms, factor-enumeration guard counts.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(BigInt base, unsigned exp) {
  BigInt out = 1;
  while (exp > 0) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

inline double big_to_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace balfactor
