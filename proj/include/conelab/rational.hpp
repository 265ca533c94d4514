#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace conelab {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

/// Raised on malformed or out-of-contract inputs (dimension mismatches,
/// inhomogeneous cones, unparsable rationals, ...).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

inline int sign(const Rat& x) { return x.sign(); }

/// Parses "p/q" or "p". Denominator must be nonzero.
inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        if (denominator(r) == 0) throw InputError("zero denominator: '" + s + "'");
        return r;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("cannot parse rational: '" + s + "'");
    }
}

inline std::string to_string(const Rat& x) { return x.str(); }

/// Largest integer i with i*i <= n.  n must be nonnegative.
inline Int isqrt(const Int& n) {
    if (n < 0) throw InputError("isqrt of negative integer");
    return boost::multiprecision::sqrt(n);
}

/// Rational lower bound of sqrt(q): returns r with r^2 <= q.
inline Rat sqrt_lower(const Rat& q) {
    if (q < 0) throw InputError("sqrt_lower of negative rational");
    Int n = numerator(q), d = denominator(q);
    return Rat(isqrt(n * d), d);
}

/// Rational upper bound of sqrt(q): returns r with r^2 >= q.
inline Rat sqrt_upper(const Rat& q) {
    if (q < 0) throw InputError("sqrt_upper of negative rational");
    Int n = numerator(q), d = denominator(q);
    Int s = isqrt(n * d);
    if (s * s < n * d) s += 1;
    return Rat(s, d);
}

/// Exact comparison of a*sqrt(q) with b, q >= 0.
/// Returns -1, 0, +1 for <, =, >.
inline int cmp_mul_sqrt(const Rat& a, const Rat& q, const Rat& b) {
    if (q < 0) throw InputError("cmp_mul_sqrt with negative radicand");
    const Rat lhs_sq = a * a * q;
    if (a >= 0 && b >= 0) {
        if (lhs_sq < b * b) return -1;
        if (lhs_sq > b * b) return 1;
        return 0;
    }
    if (a < 0 && b < 0) {
        // both negative: order flips under squaring
        if (lhs_sq > b * b) return -1;
        if (lhs_sq < b * b) return 1;
        return 0;
    }
    if (a < 0) {
        // a*sqrt(q) <= 0 <= b; equal only when both are zero
        return (b == 0 && lhs_sq == 0) ? 0 : -1;
    }
    return (a == 0 || q == 0) && b == 0 ? 0 : 1;
}

/// Is a*sqrt(q) <= b, exactly.
inline bool le_mul_sqrt(const Rat& a, const Rat& q, const Rat& b) {
    return cmp_mul_sqrt(a, q, b) <= 0;
}

} // namespace conelab
