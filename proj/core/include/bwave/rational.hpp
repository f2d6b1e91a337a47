#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace bwave {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace bwave
