#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "cyclestat/errors.hpp"
#include "cyclestat/numeric.hpp"

namespace cyclestat {

/// Truncated power series with exact rational coefficients. Immutable in
/// practice: all operations return fresh values. Mixed-order arithmetic
/// truncates to the shorter operand rather than inventing coefficients.
class PowerSeries {
public:
    explicit PowerSeries(std::size_t order) : c_(order + 1) {}

    explicit PowerSeries(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1);
    }

    static PowerSeries one(std::size_t order) {
        PowerSeries s(order);
        s.c_[0] = 1;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& coeff(std::size_t i) { return c_[i]; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_one() const {
        if (c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// Integer coefficient vector; throws if any coefficient is fractional.
    std::vector<Int> integer_coeffs() const {
        std::vector<Int> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (denominator(c_[i]) != 1)
                throw InconsistentDescriptor("series coefficient " + std::to_string(i) +
                                             " is not an integer: " + rat_str(c_[i]));
            out[i] = numerator(c_[i]);
        }
        return out;
    }

private:
    std::vector<Rat> c_;
};

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeff(i) = a[i] + b[i];
    return r;
}

inline PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeff(i) = a[i] - b[i];
    return r;
}

/// Cauchy product truncated to the minimum operand order.
inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (b[j] == 0) continue;
            r.coeff(i + j) += a[i] * b[j];
        }
    }
    return r;
}

inline PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) { return a * b; }

/// Multiplicative inverse: multiply(a, invert(a)) == 1 through the truncation order.
inline PowerSeries invert(const PowerSeries& a) {
    if (a[0] == 0) throw ZeroConstantTerm("invert: constant term is zero");
    std::size_t n = a.order();
    PowerSeries r(n);
    Rat inv0 = Rat(1) / a[0];
    r.coeff(0) = inv0;
    for (std::size_t i = 1; i <= n; ++i) {
        Rat acc = 0;
        for (std::size_t j = 1; j <= i; ++j) {
            if (a[j] == 0) continue;
            acc += a[j] * r[i - j];
        }
        r.coeff(i) = -inv0 * acc;
    }
    return r;
}

/// Formal derivative, truncated one order lower (or order 0 input stays order 0).
inline PowerSeries derivative(const PowerSeries& a) {
    std::size_t n = a.order();
    PowerSeries r(n == 0 ? 0 : n - 1);
    for (std::size_t i = 1; i <= n; ++i) r.coeff(i - 1) = a[i] * Rat(i);
    return r;
}

/// A rational function num(t)/den(t) with integer coefficients, expandable at t=0.
struct RationalFunction {
    std::vector<Int> num; // ascending powers of t
    std::vector<Int> den;

    RationalFunction() : num{1}, den{1} {}
    RationalFunction(std::vector<Int> n, std::vector<Int> d)
        : num(std::move(n)), den(std::move(d)) {
        if (num.empty()) num = {Int(0)};
        if (den.empty() || den[0] == 0)
            throw ZeroConstantTerm("rational function denominator has zero constant term");
    }

    /// Exact value at a rational point; denominator must not vanish there.
    Rat evaluate(const Rat& t) const {
        Rat n = 0, d = 0, p = 1;
        std::size_t m = std::max(num.size(), den.size());
        for (std::size_t i = 0; i < m; ++i) {
            if (i < num.size()) n += Rat(num[i]) * p;
            if (i < den.size()) d += Rat(den[i]) * p;
            p *= t;
        }
        if (d == 0) throw NonPositiveValue("rational function has a pole at evaluation point");
        return n / d;
    }
};

/// Taylor coefficients of num/den at 0 through order N, exact.
inline PowerSeries expand_rational(const RationalFunction& rf, std::size_t N) {
    if (rf.den.empty() || rf.den[0] == 0)
        throw ZeroConstantTerm("expand_rational: denominator constant term is zero");
    PowerSeries r(N);
    Rat inv0 = Rat(1) / Rat(rf.den[0]);
    for (std::size_t i = 0; i <= N; ++i) {
        Rat acc = i < rf.num.size() ? Rat(rf.num[i]) : Rat(0);
        std::size_t jmax = std::min(i, rf.den.size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            if (rf.den[j] == 0) continue;
            acc -= Rat(rf.den[j]) * r[i - j];
        }
        r.coeff(i) = acc * inv0;
    }
    return r;
}

enum class EulerMode {
    multiset, // product of (1 - t^k)^{-e_k}: unordered selections with repetition
    set       // product of (1 + t^k)^{e_k}: squarefree selections
};

/// Coefficients of the Euler product over k = 1..N with exponents e_k >= 0,
/// by degree-by-degree dynamic programming. exponents[i] is e_{i+1}; missing
/// entries are treated as zero. All arithmetic is integral.
inline PowerSeries euler_product(const std::vector<Int>& exponents, EulerMode mode,
                                 std::size_t N) {
    for (const Int& e : exponents)
        if (e < 0) throw NegativeExponent("euler_product: negative exponent");

    std::vector<Int> acc(N + 1);
    acc[0] = 1;
    std::vector<Int> next(N + 1);
    for (std::size_t k = 1; k <= N && k <= exponents.size(); ++k) {
        const Int& e = exponents[k - 1];
        if (e == 0) continue;
        std::fill(next.begin(), next.end(), Int(0));
        // weight(x) = multichoose(e, x) or binomial(e, x), built incrementally
        std::size_t xmax = N / k;
        std::vector<Int> w(xmax + 1);
        w[0] = 1;
        for (std::size_t x = 1; x <= xmax; ++x) {
            if (mode == EulerMode::multiset) {
                w[x] = w[x - 1] * (e + Int(x) - 1);
                w[x] /= Int(x);
            } else {
                if (Int(x) > e) { w[x] = 0; continue; }
                w[x] = w[x - 1] * (e - Int(x) + 1);
                w[x] /= Int(x);
            }
        }
        for (std::size_t j = 0; j <= N; ++j) {
            if (acc[j] == 0) continue;
            for (std::size_t x = 0; j + k * x <= N; ++x) {
                if (w[x] == 0) continue;
                next[j + k * x] += acc[j] * w[x];
            }
        }
        acc.swap(next);
    }

    PowerSeries out(N);
    for (std::size_t i = 0; i <= N; ++i) out.coeff(i) = Rat(acc[i]);
    return out;
}

} // namespace cyclestat
