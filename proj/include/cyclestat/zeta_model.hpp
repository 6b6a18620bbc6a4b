#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclestat/errors.hpp"
#include "cyclestat/numeric.hpp"
#include "cyclestat/power_series.hpp"
#include "cyclestat/variety.hpp"

namespace cyclestat {

/// pi_n = (1/n) sum_{k|n} mu(n/k) |V(F_{q^k})|, exact. Input and output are
/// 1-indexed vectors of size N+1 with slot 0 unused. Rejects descriptors whose
/// inverted counts are negative or fractional: those cannot come from a
/// geometrically connected variety.
inline std::vector<Int> closed_point_counts(const std::vector<Int>& points) {
    std::size_t N = points.size() - 1;
    std::vector<Int> pi(N + 1);
    for (std::size_t n = 1; n <= N; ++n) {
        Int acc = 0;
        for (std::uint64_t k : divisors_of(n)) {
            int mu = moebius(n / k);
            if (mu == 1) acc += points[k];
            else if (mu == -1) acc -= points[k];
        }
        if (acc % Int(n) != 0)
            throw InconsistentDescriptor("pi_" + std::to_string(n) + " is not an integer");
        pi[n] = acc / Int(n);
        if (pi[n] < 0)
            throw InconsistentDescriptor("pi_" + std::to_string(n) + " is negative");
    }
    return pi;
}

/// Exact count tables derived from one descriptor: everything downstream
/// (smoothness, order statistics, sampling) reads these.
struct ZetaExpansion {
    VarietyDescriptor desc;
    std::int64_t q = 2;
    std::int32_t d = 1;
    std::size_t N = 0;
    std::vector<Int> sym;    // |Sym^n V(F_q)|, n = 0..N
    std::vector<Int> conf;   // |Conf^n V(F_q)|, n = 0..N
    std::vector<Int> pi;     // closed points of degree k, 1-indexed
    std::vector<Int> points; // |V(F_{q^k})|, 1-indexed
    std::optional<Rat> ring_z; // Z(V,t)(1-q^d t) at t = q^{-d}, rational kinds only

    Int qd() const { return int_pow(Int(q), static_cast<std::uint64_t>(d)); }

    const Int& sym_at(std::size_t n) const {
        if (n > N) throw TruncationTooShort("sym count past truncation order");
        return sym[n];
    }
    const Int& conf_at(std::size_t n) const {
        if (n > N) throw TruncationTooShort("conf count past truncation order");
        return conf[n];
    }
};

/// Exact value of Z(V,t)(1 - q^d t) at t = q^{-d}.
inline Rat ring_z_value(const VarietyDescriptor& desc) {
    if (!desc.has_rational_zeta())
        throw NotRational("ring Z value needs a rational zeta function");
    RationalFunction rf = desc.zeta();
    // divide the forced factor (1 - q^d t) out of the denominator
    Int a = int_pow(Int(desc.q), static_cast<std::uint64_t>(desc.d));
    std::vector<Int> den = rf.den;
    while (den.size() > 1 && den.back() == 0) den.pop_back();
    std::vector<Int> reduced(den.size() - 1);
    for (std::size_t j = 0; j + 1 < den.size(); ++j)
        reduced[j] = den[j] + (j == 0 ? Int(0) : a * reduced[j - 1]);
    if (den.back() != -a * reduced.back())
        throw InconsistentDescriptor("zeta denominator is not divisible by 1 - q^d t");
    RationalFunction ring(rf.num, std::move(reduced));
    Rat v = ring.evaluate(Rat(1) / Rat(a));
    if (v <= 0) throw NonPositiveValue("ring zeta value is not positive");
    return v;
}

namespace detail {

/// Point counts |V(F_{q^k})| from a rational zeta function via the logarithmic
/// derivative: t Z'/Z = sum_k |V(F_{q^k})| t^k.
inline std::vector<Int> points_from_rational(const RationalFunction& rf, std::size_t N) {
    auto as_series = [N](const std::vector<Int>& p) {
        PowerSeries s(N);
        for (std::size_t i = 0; i < p.size() && i <= N; ++i) s.coeff(i) = Rat(p[i]);
        return s;
    };
    auto log_deriv = [N, &as_series](const std::vector<Int>& p) {
        PowerSeries s = as_series(p);
        PowerSeries ds(N); // derivative padded back to order N
        for (std::size_t i = 1; i <= N; ++i) ds.coeff(i - 1) = s[i] * Rat(i);
        return ds * invert(s);
    };
    PowerSeries u = log_deriv(rf.num) - log_deriv(rf.den);
    std::vector<Int> points(N + 1);
    for (std::size_t k = 1; k <= N; ++k) {
        Rat c = u[k - 1]; // multiplication by t shifts indices up
        if (denominator(c) != 1)
            throw InconsistentDescriptor("point count at k=" + std::to_string(k) +
                                         " is not an integer");
        points[k] = numerator(c);
        if (points[k] < 0)
            throw InconsistentDescriptor("negative point count at k=" + std::to_string(k));
    }
    return points;
}

} // namespace detail

/// Build every exact table through order N. Sym counts come from the rational
/// zeta function (or the exp recurrence for raw point counts); conf counts are
/// computed twice, as Z(t)/Z(t^2) and as a set Euler product over pi, and the
/// two routes must agree.
inline ZetaExpansion build_zeta(const VarietyDescriptor& desc, std::size_t N) {
    ZetaExpansion z;
    z.desc = desc;
    z.q = desc.q;
    z.d = desc.d;
    z.N = N;

    PowerSeries sym_series(N);
    if (desc.kind == DescriptorKind::point_counts) {
        if (desc.counts.size() < N)
            throw TruncationTooShort("point-count descriptor carries " +
                                     std::to_string(desc.counts.size()) +
                                     " counts, need N=" + std::to_string(N));
        z.points.assign(N + 1, Int(0));
        for (std::size_t k = 1; k <= N; ++k) z.points[k] = desc.counts[k - 1];
        // Z = exp(sum c_k t^k / k): n z_n = sum_{j=1..n} c_j z_{n-j}
        std::vector<Int> s(N + 1);
        s[0] = 1;
        for (std::size_t n = 1; n <= N; ++n) {
            Int acc = 0;
            for (std::size_t j = 1; j <= n; ++j) acc += z.points[j] * s[n - j];
            if (acc % Int(n) != 0)
                throw InconsistentDescriptor("sym count at n=" + std::to_string(n) +
                                             " is not an integer");
            s[n] = acc / Int(n);
            if (s[n] < 0)
                throw InconsistentDescriptor("negative sym count at n=" + std::to_string(n));
        }
        z.sym = s;
        for (std::size_t n = 0; n <= N; ++n) sym_series.coeff(n) = Rat(z.sym[n]);
    } else {
        RationalFunction rf = desc.zeta();
        sym_series = expand_rational(rf, N);
        z.sym = sym_series.integer_coeffs();
        for (std::size_t n = 0; n <= N; ++n)
            if (z.sym[n] < 0)
                throw InconsistentDescriptor("negative sym count at n=" + std::to_string(n));
        z.points = detail::points_from_rational(rf, N);
        z.ring_z = ring_z_value(desc);
    }

    z.pi = closed_point_counts(z.points);
    for (std::size_t k = 1; k <= N; ++k)
        if (Int(k) * z.pi[k] > z.points[k])
            throw InconsistentDescriptor("k*pi_k exceeds the point count at k=" +
                                         std::to_string(k));

    // conf route 1: Z(t) / Z(t^2)
    PowerSeries zt2(N);
    for (std::size_t i = 0; 2 * i <= N; ++i) zt2.coeff(2 * i) = Rat(z.sym[i]);
    PowerSeries conf_series = sym_series * invert(zt2);
    z.conf = conf_series.integer_coeffs();

    // conf route 2: set Euler product over closed points
    std::vector<Int> expo(z.pi.begin() + 1, z.pi.end());
    std::vector<Int> conf2 = euler_product(expo, EulerMode::set, N).integer_coeffs();
    if (z.conf != conf2)
        throw InconsistentDescriptor("conf counts disagree between Z(t)/Z(t^2) and the Euler product");

    for (std::size_t n = 0; n <= N; ++n) {
        if (z.conf[n] < 0)
            throw InconsistentDescriptor("negative conf count at n=" + std::to_string(n));
        if (z.conf[n] > z.sym[n])
            throw InconsistentDescriptor("conf count exceeds sym count at n=" + std::to_string(n));
    }
    return z;
}

inline Rat ring_z_at(const ZetaExpansion& z) {
    if (!z.ring_z)
        throw NotRational("descriptor kind '" + std::string(kind_name(z.desc.kind)) +
                          "' has no rational zeta closed form");
    return *z.ring_z;
}

/// One row of the prime-number-theorem comparison.
struct PntRow {
    std::size_t n;
    Rat pi_ratio;     // pi_n / |Sym^n|
    Rat predicted;    // (1/n) / ring Z value
    Rat abs_error;
    double scaled_error; // abs_error * n * q^{n/2}
};

inline std::vector<PntRow> pnt_report(const ZetaExpansion& z, std::size_t lo, std::size_t hi) {
    if (lo < 1 || hi > z.N || lo > hi) throw DomainError("pnt_report: bad n range");
    Rat ring = ring_z_at(z);
    std::vector<PntRow> rows;
    rows.reserve(hi - lo + 1);
    for (std::size_t n = lo; n <= hi; ++n) {
        if (z.sym[n] == 0) throw NonPositiveValue("empty Sym^n at n=" + std::to_string(n));
        PntRow r;
        r.n = n;
        r.pi_ratio = Rat(z.pi[n]) / Rat(z.sym[n]);
        r.predicted = Rat(1) / (Rat(n) * ring);
        r.abs_error = r.pi_ratio > r.predicted ? r.pi_ratio - r.predicted
                                               : r.predicted - r.pi_ratio;
        r.scaled_error = to_double(r.abs_error) * static_cast<double>(n) *
                         std::pow(static_cast<double>(z.q), static_cast<double>(n) / 2.0);
        rows.push_back(std::move(r));
    }
    return rows;
}

struct ValidationCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

namespace detail {

/// Roots of an integer polynomial with nonzero constant term, via the
/// companion matrix of the monic normalization.
inline std::vector<std::complex<double>> poly_roots(const std::vector<Int>& p) {
    std::vector<double> c;
    for (const Int& v : p) c.push_back(to_double(v));
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    std::size_t m = c.size() - 1;
    std::vector<std::complex<double>> roots;
    if (m == 0) return roots;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < m; ++i) companion(i, m - 1) = -c[i] / c[m];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        roots.push_back(solver.eigenvalues()[i]);
    return roots;
}

} // namespace detail

/// Advisory conformance report: root moduli of the Weil polynomials, the
/// point-count normalization trend, and integrality of the inverted counts.
/// Construction elsewhere enforces only the exact-arithmetic invariants; this
/// reports on the float-tolerance ones as well.
inline ValidationReport validate_descriptor(const VarietyDescriptor& desc, std::size_t N = 30) {
    ValidationReport rep;
    constexpr double kTol = 1e-6;

    if (desc.has_rational_zeta()) {
        ValidationCheck rc{"root_modulus", true, ""};
        double logq = std::log(static_cast<double>(desc.q));
        for (std::size_t i = 0; i < desc.polys.size(); ++i) {
            for (const auto& alpha : detail::poly_roots(desc.polys[i])) {
                double x = -2.0 * std::log(std::abs(alpha)) / logq;
                double j = std::round(x);
                if (std::abs(x - j) > kTol || j < -kTol || j > static_cast<double>(i) + kTol) {
                    rc.passed = false;
                    rc.detail += "P_" + std::to_string(i) + " root |alpha|=" +
                                 std::to_string(std::abs(alpha)) +
                                 " is no q^{-j/2} with integer j<=" + std::to_string(i) + "; ";
                }
            }
        }
        if (rc.passed) rc.detail = "all roots on the allowed circles";
        rep.checks.push_back(std::move(rc));
    }

    std::vector<Int> points;
    try {
        if (desc.kind == DescriptorKind::point_counts) {
            std::size_t K = std::min<std::size_t>(N, desc.counts.size());
            points.assign(K + 1, Int(0));
            for (std::size_t k = 1; k <= K; ++k) points[k] = desc.counts[k - 1];
        } else {
            points = detail::points_from_rational(desc.zeta(), N);
        }
    } catch (const Error& e) {
        rep.checks.push_back({"point_counts", false, e.what()});
        return rep;
    }

    {
        // witness of |V(F_{q^n})| / q^{nd} -> 1: the q^{n/2}-scaled deviation
        // must not grow past a slack bound seeded by the first few values
        ValidationCheck lw{"lang_weil_trend", true, ""};
        std::vector<double> w;
        for (std::size_t n = 1; n < points.size(); ++n) {
            Rat ratio = Rat(points[n]) / Rat(int_pow(Int(desc.q), desc.d * n));
            double dev = std::abs(to_double(ratio) - 1.0);
            w.push_back(dev * std::pow(static_cast<double>(desc.q), static_cast<double>(n) / 2.0));
        }
        double head = 0.0;
        for (std::size_t i = 0; i < w.size() && i < 5; ++i) head = std::max(head, w[i]);
        double bound = 4.0 + 2.0 * head;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] > bound) {
                lw.passed = false;
                lw.detail += "scaled deviation " + std::to_string(w[i]) + " at n=" +
                             std::to_string(i + 1) + " exceeds bound " + std::to_string(bound) + "; ";
            }
        if (lw.passed) lw.detail = "scaled deviations bounded";
        rep.checks.push_back(std::move(lw));
    }

    {
        ValidationCheck ic{"pi_integrality", true, "all pi_k integral and nonnegative"};
        try {
            closed_point_counts(points);
        } catch (const Error& e) {
            ic.passed = false;
            ic.detail = e.what();
        }
        rep.checks.push_back(std::move(ic));
    }
    return rep;
}

} // namespace cyclestat
