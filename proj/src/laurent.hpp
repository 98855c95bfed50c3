#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <string>

namespace jones {

using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Laurent polynomial in the bracket variable A, with exact arbitrary-precision
// integer coefficients. Bracket coefficients grow with the crossing count, so
// arithmetic must never overflow or round.
class LaurentPoly {
  public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return {}; }
    static LaurentPoly one() { return monomial(0, 1); }
    static LaurentPoly monomial(long exp, BigInt coeff = 1);

    // d = -A^2 - A^{-2}
    static LaurentPoly d_poly();
    // (-A)^e for signed e
    static LaurentPoly neg_A_pow(long e);

    bool is_zero() const { return terms_.empty(); }
    const std::map<long, BigInt>& terms() const { return terms_; }
    BigInt coeff(long exp) const;

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly scaled(const BigInt& c) const;
    LaurentPoly pow(unsigned e) const;

    bool operator==(const LaurentPoly& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const LaurentPoly& rhs) const { return !(*this == rhs); }

    // Horner evaluation over sorted exponents; requires a != 0.
    Complex eval(Complex a) const;

    // "c*A^e + ..." with exponents descending; "0" for the zero polynomial.
    std::string str() const;
    // {"e": "c", ...} with exponents descending; coefficients as decimal strings.
    std::string json() const;

  private:
    void add_term(long exp, const BigInt& c);
    std::map<long, BigInt> terms_; // exponent -> nonzero coefficient
};

// The evaluation point used throughout: A = i*exp(-i*pi/(2k)), the unit-modulus
// root with -A^2 - A^{-2} = 2cos(pi/k) and A^{-4} = exp(2*pi*i/k). Requires k >= 3.
Complex unit_A(int k);

// d = 2cos(pi/k)
double d_value(int k);

// z^e for signed integer e (z != 0 when e < 0)
Complex cpow_int(Complex z, long e);

} // namespace jones
