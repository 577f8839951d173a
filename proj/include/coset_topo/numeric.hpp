#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ctopo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "num/den" with den omitted when it is 1.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

}  // namespace ctopo
