#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cyclestat/errors.hpp"

namespace cyclestat {

/// Dense polynomial over a prime field F_q, capacity-bounded so the exhaustive
/// oracle never allocates. Coefficients ascending; deg == -1 encodes the zero
/// polynomial. q must be prime (extension fields are out of scope here).
class FqPoly {
public:
    static constexpr int kMaxDeg = 15;

    FqPoly() : q_(2), deg_(-1) { c_.fill(0); }

    explicit FqPoly(std::uint32_t q) : q_(q), deg_(-1) { c_.fill(0); }

    FqPoly(std::uint32_t q, std::initializer_list<std::uint8_t> coeffs) : q_(q), deg_(-1) {
        c_.fill(0);
        int i = 0;
        for (auto v : coeffs) c_[i++] = static_cast<std::uint8_t>(v % q);
        deg_ = i - 1;
        trim();
    }

    static FqPoly zero(std::uint32_t q) { return FqPoly(q); }

    static FqPoly constant(std::uint32_t q, std::uint32_t v) {
        FqPoly p(q);
        p.c_[0] = static_cast<std::uint8_t>(v % q);
        p.deg_ = p.c_[0] ? 0 : -1;
        return p;
    }

    /// x^n plus lower coefficients given by the base-q digits of index.
    static FqPoly monic_from_index(std::uint32_t q, int n, std::uint64_t index) {
        FqPoly p(q);
        for (int j = 0; j < n; ++j) {
            p.c_[j] = static_cast<std::uint8_t>(index % q);
            index /= q;
        }
        p.c_[n] = 1;
        p.deg_ = n;
        return p;
    }

    std::uint32_t q() const { return q_; }
    int degree() const { return deg_; }
    bool is_zero() const { return deg_ < 0; }
    bool is_one() const { return deg_ == 0 && c_[0] == 1; }
    bool is_monic() const { return deg_ >= 0 && c_[deg_] == 1; }
    std::uint8_t coeff(int i) const { return c_[i]; }
    std::uint8_t& coeff_ref(int i) { return c_[i]; }
    void set_degree(int d) { deg_ = d; }

    /// Number of trailing zero coefficients (the multiplicity of x).
    int x_multiplicity() const {
        if (deg_ < 0) return 0;
        int m = 0;
        while (m <= deg_ && c_[m] == 0) ++m;
        return m;
    }

    void trim() {
        while (deg_ >= 0 && c_[deg_] == 0) --deg_;
    }

    FqPoly derivative() const {
        FqPoly d(q_);
        if (deg_ <= 0) return d;
        for (int i = 1; i <= deg_; ++i)
            d.c_[i - 1] = static_cast<std::uint8_t>((static_cast<std::uint32_t>(c_[i]) * i) % q_);
        d.deg_ = deg_ - 1;
        d.trim();
        return d;
    }

    FqPoly operator*(const FqPoly& o) const {
        FqPoly r(q_);
        if (is_zero() || o.is_zero()) return r;
        std::array<std::uint32_t, 2 * kMaxDeg + 2> acc{};
        for (int i = 0; i <= deg_; ++i) {
            if (!c_[i]) continue;
            for (int j = 0; j <= o.deg_; ++j) acc[i + j] += c_[i] * o.c_[j];
        }
        int d = deg_ + o.deg_;
        if (d > kMaxDeg) throw CapExceeded("FqPoly product exceeds capacity");
        for (int i = 0; i <= d; ++i) r.c_[i] = static_cast<std::uint8_t>(acc[i] % q_);
        r.deg_ = d;
        r.trim();
        return r;
    }

    /// In-place remainder of *this by monic g; returns the quotient.
    FqPoly divmod_by_monic(const FqPoly& g) {
        FqPoly quot(q_);
        if (deg_ < g.deg_) return quot;
        quot.deg_ = deg_ - g.deg_;
        for (int i = deg_; i >= g.deg_; --i) {
            std::uint8_t lead = c_[i];
            quot.c_[i - g.deg_] = lead;
            if (!lead) continue;
            for (int j = 0; j <= g.deg_; ++j) {
                std::uint32_t sub = static_cast<std::uint32_t>(lead) * g.c_[j] % q_;
                std::uint32_t cur = c_[i - g.deg_ + j];
                c_[i - g.deg_ + j] = static_cast<std::uint8_t>((cur + q_ - sub) % q_);
            }
        }
        deg_ = g.deg_ - 1;
        trim();
        quot.trim();
        return quot;
    }

    /// If monic g divides *this exactly, replace *this by the quotient.
    bool try_divide_by(const FqPoly& g) {
        if (g.deg_ > deg_) return false;
        FqPoly rem = *this;
        FqPoly quot = rem.divmod_by_monic(g);
        if (!rem.is_zero()) return false;
        *this = quot;
        return true;
    }

    FqPoly monic_scaled() const {
        FqPoly r = *this;
        if (deg_ < 0 || c_[deg_] == 1) return r;
        std::uint32_t inv = inverse_mod(c_[deg_], q_);
        for (int i = 0; i <= deg_; ++i)
            r.c_[i] = static_cast<std::uint8_t>(static_cast<std::uint32_t>(r.c_[i]) * inv % q_);
        return r;
    }

    /// Over F_p, a polynomial with zero derivative is g(x)^p with
    /// g_i = f_{ip}; Frobenius is the identity on F_p so coefficients carry over.
    FqPoly pth_root() const {
        FqPoly r(q_);
        if (deg_ < 0) return r;
        int d = deg_ / static_cast<int>(q_);
        for (int i = 0; i <= d; ++i) r.c_[i] = c_[i * q_];
        r.deg_ = d;
        r.trim();
        return r;
    }

    friend FqPoly gcd(FqPoly a, FqPoly b) {
        a = a.monic_scaled();
        b = b.monic_scaled();
        while (!b.is_zero()) {
            a.divmod_by_monic(b);
            a = a.monic_scaled();
            std::swap(a, b);
        }
        return a;
    }

    bool operator==(const FqPoly& o) const {
        if (deg_ != o.deg_) return false;
        for (int i = 0; i <= deg_; ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }

    /// Degree-then-coefficient order; gives the deterministic enumeration order.
    bool operator<(const FqPoly& o) const {
        if (deg_ != o.deg_) return deg_ < o.deg_;
        for (int i = deg_; i >= 0; --i)
            if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
        return false;
    }

    std::string str() const {
        if (deg_ < 0) return "0";
        std::string s;
        for (int i = deg_; i >= 0; --i) {
            if (!c_[i]) continue;
            if (!s.empty()) s += "+";
            if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
            if (i >= 1) {
                if (c_[i] != 1) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? "0" : s;
    }

    static std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
        // q <= 7, a != 0: brute force
        for (std::uint32_t x = 1; x < q; ++x)
            if (a * x % q == 1) return x;
        throw DomainError("no inverse mod q");
    }

private:
    std::uint32_t q_;
    int deg_;
    std::array<std::uint8_t, kMaxDeg + 1> c_;
};

} // namespace cyclestat
