#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "cyclestat/errors.hpp"

namespace cyclestat {

// Exact arithmetic types used throughout. Counting quantities grow like q^n,
// so fixed-width integers are never enough.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

/// Canonical text form: plain decimal for integers, "num/den" otherwise.
inline std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// binomial(n, k) for big n, small k.
inline Int binomial(const Int& n, std::uint64_t k) {
    if (n < 0) throw DomainError("binomial: negative upper argument");
    if (Int(k) > n) return 0;
    Int r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= n - Int(i);
        r /= Int(i + 1); // exact at every step
    }
    return r;
}

/// Number of size-k multisets drawn from n types: binomial(n+k-1, k).
inline Int multichoose(const Int& n, std::uint64_t k) {
    if (k == 0) return 1;
    if (n == 0) return 0;
    return binomial(n + Int(k) - 1, k);
}

/// Generalized binomial with rational upper argument, used for formal identities.
inline Rat binomial_rat(const Rat& a, std::uint64_t k) {
    Rat r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        r *= a - Rat(i);
        r /= Rat(i + 1);
    }
    return r;
}

/// ((a multichoose k)) = binomial(a+k-1, k) with rational a.
inline Rat multichoose_rat(const Rat& a, std::uint64_t k) {
    return binomial_rat(a + Rat(k) - 1, k);
}

inline Int factorial(std::uint64_t n) {
    Int r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

inline std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    for (auto it = hi.rbegin(); it != hi.rend(); ++it) lo.push_back(*it);
    return lo;
}

/// Moebius function by trial factorization; n stays small (degree indices).
inline int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Returns the prime p with q = p^e, or 0 if q is not a prime power.
inline std::uint64_t prime_power_base(std::uint64_t q) {
    if (q < 2) return 0;
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            while (q % p == 0) q /= p;
            return q == 1 ? p : 0;
        }
    }
    return q; // q itself prime
}

/// Integer power q^e as a big integer.
inline Int int_pow(const Int& q, std::uint64_t e) {
    Int r = 1, base = q;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat rat_pow(const Rat& x, std::uint64_t e) {
    Rat r = 1, base = x;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw DomainError("isqrt of negative value");
    if (n == 0) return 0;
    Int x = Int(1) << (static_cast<unsigned>(boost::multiprecision::msb(n)) / 2 + 1);
    for (;;) {
        Int y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    return x;
}

/// Smallest integer m with m*m >= n.
inline Int isqrt_ceil(const Int& n) {
    Int r = isqrt_floor(n);
    if (r * r < n) ++r;
    return r;
}

inline Int ceil_rat(const Rat& r) {
    Int n = numerator(r), d = denominator(r);
    Int q = n / d;
    if (q * d < n) ++q; // n/d truncates toward zero; fix positive remainders
    return q;
}

} // namespace cyclestat
