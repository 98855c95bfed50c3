#include "laurent.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace jones {

LaurentPoly LaurentPoly::monomial(long exp, BigInt coeff) {
    LaurentPoly p;
    p.add_term(exp, coeff);
    return p;
}

LaurentPoly LaurentPoly::d_poly() {
    LaurentPoly p;
    p.add_term(2, -1);
    p.add_term(-2, -1);
    return p;
}

LaurentPoly LaurentPoly::neg_A_pow(long e) {
    // (-A)^e = (-1)^e A^e; for negative e the sign is (-1)^{|e|} as well.
    const bool odd = (e % 2) != 0;
    return monomial(e, odd ? -1 : 1);
}

BigInt LaurentPoly::coeff(long exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? BigInt(0) : it->second;
}

void LaurentPoly::add_term(long exp, const BigInt& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    for (const auto& [e, c] : rhs.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term(ea + eb, ca * cb);
    return out;
}

LaurentPoly LaurentPoly::scaled(const BigInt& c) const {
    LaurentPoly out;
    if (c == 0)
        return out;
    for (const auto& [e, t] : terms_)
        out.terms_.emplace(e, t * c);
    return out;
}

LaurentPoly LaurentPoly::pow(unsigned e) const {
    LaurentPoly acc = one();
    LaurentPoly base = *this;
    while (e) {
        if (e & 1)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Complex cpow_int(Complex z, long e) {
    if (e < 0)
        return 1.0 / cpow_int(z, -e);
    Complex acc = 1.0;
    while (e) {
        if (e & 1)
            acc *= z;
        z *= z;
        e >>= 1;
    }
    return acc;
}

Complex LaurentPoly::eval(Complex a) const {
    if (a == Complex(0.0, 0.0))
        throw std::invalid_argument("LaurentPoly::eval: A must be nonzero");
    if (terms_.empty())
        return {0.0, 0.0};
    // Horner over descending exponents, then one final power for the lowest
    // exponent (possibly negative).
    auto it = terms_.rbegin();
    Complex acc = it->second.convert_to<double>();
    long prev = it->first;
    for (++it; it != terms_.rend(); ++it) {
        acc = acc * cpow_int(a, prev - it->first) + Complex(it->second.convert_to<double>());
        prev = it->first;
    }
    return acc * cpow_int(a, prev);
}

std::string LaurentPoly::str() const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        BigInt c = it->second;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        BigInt mag = c < 0 ? BigInt(-c) : c;
        long e = it->first;
        if (e == 0) {
            os << mag.str();
        } else {
            if (mag != 1)
                os << mag.str() << "*";
            os << "A";
            if (e != 1)
                os << "^" << e;
        }
    }
    return os.str();
}

std::string LaurentPoly::json() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first)
            os << ",";
        first = false;
        os << "\"" << it->first << "\":\"" << it->second.str() << "\"";
    }
    os << "}";
    return os.str();
}

Complex unit_A(int k) {
    if (k < 3)
        throw std::invalid_argument("unit_A: k must be >= 3");
    const double theta = std::numbers::pi / 2.0 - std::numbers::pi / (2.0 * k);
    return {std::cos(theta), std::sin(theta)};
}

double d_value(int k) {
    if (k < 3)
        throw std::invalid_argument("d_value: k must be >= 3");
    return 2.0 * std::cos(std::numbers::pi / k);
}

} // namespace jones
