#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "cyclestat/errors.hpp"
#include "cyclestat/fq_poly.hpp"
#include "cyclestat/numeric.hpp"
#include "cyclestat/threading.hpp"

namespace cyclestat {

struct OracleCaps {
    std::uint32_t max_q = 7;
    std::uint32_t max_n = 14;
};

inline void check_oracle_args(std::uint32_t q, std::uint32_t n, const OracleCaps& caps) {
    if (!is_prime_u64(q))
        throw DomainError("oracle requires a prime field: q=" + std::to_string(q) +
                          " is not prime (prime powers are not supported here)");
    if (q > caps.max_q || n > caps.max_n || n < 1)
        throw CapExceeded("oracle request q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                          " outside caps (q<=" + std::to_string(caps.max_q) +
                          ", 1<=n<=" + std::to_string(caps.max_n) + ")");
}

/// All q^n monic polynomials of degree n, in lexicographic order of the
/// coefficient word (x^n first).
template <class F>
void for_each_monic(std::uint32_t q, std::uint32_t n, F&& fn,
                    const OracleCaps& caps = OracleCaps{}) {
    check_oracle_args(q, n, caps);
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < n; ++i) total *= q;
    FqPoly p = FqPoly::monic_from_index(q, static_cast<int>(n), 0);
    for (std::uint64_t idx = 0;; ++idx) {
        fn(p);
        if (idx + 1 == total) break;
        // odometer increment on the low coefficients
        for (int j = 0;; ++j) {
            std::uint8_t v = p.coeff(j);
            if (v + 1u < q) {
                p.coeff_ref(j) = v + 1;
                break;
            }
            p.coeff_ref(j) = 0;
        }
    }
}

/// Monic irreducibles over F_q grouped by degree, grown on demand by the
/// classic sieve: a candidate is irreducible iff no cached irreducible of at
/// most half its degree divides it.
class IrreducibleCache {
public:
    explicit IrreducibleCache(std::uint32_t q) : q_(q) {
        if (!is_prime_u64(q)) throw DomainError("IrreducibleCache requires prime q");
        by_degree_.resize(1); // degree 0 slot unused
    }

    std::uint32_t q() const { return q_; }

    void ensure(std::uint32_t max_degree) {
        for (std::uint32_t d = static_cast<std::uint32_t>(by_degree_.size()); d <= max_degree; ++d) {
            std::vector<FqPoly> irr;
            std::uint64_t total = 1;
            for (std::uint32_t i = 0; i < d; ++i) total *= q_;
            for (std::uint64_t idx = 0; idx < total; ++idx) {
                FqPoly f = FqPoly::monic_from_index(q_, static_cast<int>(d), idx);
                if (is_irreducible_against_cache(f)) irr.push_back(f);
            }
            by_degree_.push_back(std::move(irr));
        }
    }

    const std::vector<FqPoly>& of_degree(std::uint32_t d) {
        ensure(d);
        return by_degree_[d];
    }

    /// First irreducible of a degree in enumeration order (used as the tracked
    /// closed point for order statistics).
    const FqPoly& first_of_degree(std::uint32_t d) {
        ensure(d);
        if (by_degree_[d].empty())
            throw NoSuchPrimeDegree("no irreducible of degree " + std::to_string(d));
        return by_degree_[d][0];
    }

private:
    bool is_irreducible_against_cache(const FqPoly& f) const {
        int half = f.degree() / 2;
        for (int d = 1; d <= half; ++d)
            for (const FqPoly& g : by_degree_[d]) {
                FqPoly rem = f;
                rem.divmod_by_monic(g);
                if (rem.is_zero()) return false;
            }
        return true;
    }

    std::uint32_t q_;
    std::vector<std::vector<FqPoly>> by_degree_;
};

using Factorization = std::vector<std::pair<FqPoly, std::uint32_t>>;

/// Complete factorization into monic irreducibles: squarefree decomposition
/// (gcd with the derivative, p-th-root extraction when the derivative
/// vanishes), then trial division of the squarefree part against the sieve
/// cache. Deterministic; factors sorted by degree then coefficients.
inline Factorization factor(FqPoly f, IrreducibleCache& cache) {
    if (f.degree() < 1) throw DomainError("factor: degree must be >= 1");
    if (!f.is_monic()) f = f.monic_scaled();
    cache.ensure(static_cast<std::uint32_t>(f.degree() / 2 > 0 ? f.degree() / 2 : 1));

    std::map<FqPoly, std::uint32_t> acc;
    std::vector<std::pair<FqPoly, std::uint32_t>> stack{{f, 1u}};
    while (!stack.empty()) {
        auto [g, outer] = stack.back();
        stack.pop_back();
        if (g.degree() < 1) continue;

        FqPoly d = g.derivative();
        if (d.is_zero()) {
            // g = h(x)^p; fold the characteristic into the outer multiplicity
            stack.emplace_back(g.pth_root(), outer * g.q());
            continue;
        }

        FqPoly w = g;
        FqPoly c = gcd(g, d);
        if (c.degree() >= 1) {
            FqPoly tmp = g;
            w = tmp.try_divide_by(c) ? tmp : g; // w = g / gcd(g, g'), squarefree
        }

        // distinct irreducibles of w by trial division, smallest degree first
        std::vector<FqPoly> distinct;
        FqPoly rest = w;
        for (int dg = 1; rest.degree() >= 1 && 2 * dg <= rest.degree(); ++dg) {
            for (const FqPoly& u : cache.of_degree(static_cast<std::uint32_t>(dg))) {
                if (rest.degree() < 2 * dg) break;
                FqPoly tmp = rest;
                if (tmp.try_divide_by(u)) {
                    distinct.push_back(u);
                    rest = tmp;
                }
            }
        }
        if (rest.degree() >= 1) distinct.push_back(rest);

        // full multiplicity of each in g
        FqPoly leftover = g;
        for (const FqPoly& u : distinct) {
            std::uint32_t m = 0;
            while (leftover.try_divide_by(u)) ++m;
            acc[u] += m * outer;
        }
        // leftover collects factors with multiplicity divisible by p
        if (leftover.degree() >= 1) stack.emplace_back(leftover, outer);
    }

    Factorization out(acc.begin(), acc.end());
    return out;
}

/// Exhaustive ground-truth statistics of all monic degree-n polynomials.
struct OracleTable {
    std::uint32_t q = 0, n = 0;
    std::uint64_t total = 0;       // |Sym^n A^1(F_q)| = q^n
    std::uint64_t irreducible = 0; // pi_n
    std::uint64_t squarefree = 0;  // |Conf^n A^1(F_q)|
    std::vector<std::uint64_t> phi; // phi[m], m = 1..n: all prime factors of degree >= m
    std::vector<std::uint64_t> psi; // psi[m]: all prime factors of degree <= m
    // nu histograms for the tracked point of each degree k (first irreducible
    // in enumeration order): counts of polynomials with nu_P = j.
    std::map<std::uint32_t, std::vector<std::uint64_t>> nu_sym;
    std::map<std::uint32_t, std::vector<std::uint64_t>> nu_conf;
    // factorization-shape frequencies: key x with x[k-1] = number of degree-k
    // prime factors counted with multiplicity
    std::map<std::vector<std::uint32_t>, std::uint64_t> profiles_sym;
    std::map<std::vector<std::uint32_t>, std::uint64_t> profiles_conf;
    // joint counts of (X_1, X_2, X_3)
    std::uint32_t d2 = 0, d3 = 0;
    std::vector<std::uint64_t> joint_sym;
    std::vector<std::uint64_t> joint_conf;

    std::size_t joint_index(std::uint32_t x1, std::uint32_t x2, std::uint32_t x3) const {
        return (static_cast<std::size_t>(x1) * d2 + x2) * d3 + x3;
    }

    /// E[prod_k binomial(X_k, lambda_k)] with lambda supported on degrees <= 3.
    Rat charpoly_expectation(const std::vector<std::uint32_t>& lambda, bool conf_space) const {
        if (lambda.size() > 3)
            throw DomainError("oracle joint table tracks degrees 1..3 only");
        auto l = [&](std::size_t i) { return i < lambda.size() ? lambda[i] : 0u; };
        const auto& joint = conf_space ? joint_conf : joint_sym;
        Int num = 0, den = conf_space ? Int(squarefree) : Int(total);
        std::uint32_t d1 = n + 1;
        for (std::uint32_t x1 = 0; x1 < d1; ++x1)
            for (std::uint32_t x2 = 0; x2 < d2; ++x2)
                for (std::uint32_t x3 = 0; x3 < d3; ++x3) {
                    std::uint64_t cnt = joint[joint_index(x1, x2, x3)];
                    if (!cnt) continue;
                    Int w = binomial(Int(x1), l(0)) * binomial(Int(x2), l(1)) *
                            binomial(Int(x3), l(2));
                    num += w * Int(cnt);
                }
        if (den == 0) throw NonPositiveValue("empty sample space in oracle expectation");
        return Rat(num) / Rat(den);
    }
};

namespace detail {

struct OracleAccum {
    std::uint64_t irreducible = 0, squarefree = 0;
    std::vector<std::uint64_t> min_hist, max_hist; // index = degree, 1..n
    std::map<std::uint32_t, std::vector<std::uint64_t>> nu_sym, nu_conf;
    std::map<std::vector<std::uint32_t>, std::uint64_t> profiles_sym, profiles_conf;
    std::vector<std::uint64_t> joint_sym, joint_conf;
};

} // namespace detail

inline OracleTable exhaustive_stats(std::uint32_t q, std::uint32_t n,
                                    const OracleCaps& caps = OracleCaps{}) {
    check_oracle_args(q, n, caps);

    OracleTable t;
    t.q = q;
    t.n = n;
    t.total = 1;
    for (std::uint32_t i = 0; i < n; ++i) t.total *= q;
    t.d2 = n / 2 + 1;
    t.d3 = n / 3 + 1;

    // one shared, pre-grown cache; workers only read it
    IrreducibleCache cache(q);
    cache.ensure(n > 1 ? n / 2 : 1);
    std::vector<std::uint32_t> tracked_degrees;
    for (std::uint32_t k : {1u, 2u})
        if (k <= n && !cache.of_degree(k).empty()) tracked_degrees.push_back(k);
    std::vector<FqPoly> tracked;
    for (auto k : tracked_degrees) tracked.push_back(cache.first_of_degree(k));

    unsigned workers = thread_budget();
    std::vector<detail::OracleAccum> parts(std::max(1u, workers));

    parallel_ranges(t.total, [&](unsigned w, std::uint64_t b, std::uint64_t e) {
        detail::OracleAccum& a = parts[w];
        a.min_hist.assign(n + 1, 0);
        a.max_hist.assign(n + 1, 0);
        a.joint_sym.assign(static_cast<std::size_t>(n + 1) * t.d2 * t.d3, 0);
        a.joint_conf.assign(static_cast<std::size_t>(n + 1) * t.d2 * t.d3, 0);
        for (auto k : tracked_degrees) {
            a.nu_sym[k].assign(n / k + 1, 0);
            a.nu_conf[k].assign(n / k + 1, 0);
        }
        IrreducibleCache local = cache; // cheap: vectors of small value types
        std::vector<std::uint32_t> xprof;
        FqPoly p = FqPoly::monic_from_index(q, static_cast<int>(n), b);
        for (std::uint64_t idx = b; idx < e; ++idx) {
            Factorization fac = factor(p, local);

            bool sf = true;
            std::uint32_t mind = n, maxd = 1;
            xprof.assign(n, 0);
            for (const auto& [u, m] : fac) {
                auto dg = static_cast<std::uint32_t>(u.degree());
                if (m > 1) sf = false;
                if (dg < mind) mind = dg;
                if (dg > maxd) maxd = dg;
                xprof[dg - 1] += m;
            }

            if (fac.size() == 1 && fac[0].second == 1) ++a.irreducible;
            if (sf) ++a.squarefree;
            ++a.min_hist[mind];
            ++a.max_hist[maxd];
            ++a.profiles_sym[xprof];
            if (sf) ++a.profiles_conf[xprof];
            std::uint32_t x1 = xprof.size() > 0 ? xprof[0] : 0;
            std::uint32_t x2 = xprof.size() > 1 ? xprof[1] : 0;
            std::uint32_t x3 = xprof.size() > 2 ? xprof[2] : 0;
            ++a.joint_sym[t.joint_index(x1, x2, x3)];
            if (sf) ++a.joint_conf[t.joint_index(x1, x2, x3)];
            for (std::size_t ti = 0; ti < tracked.size(); ++ti) {
                std::uint32_t nu = 0;
                for (const auto& [u, m] : fac)
                    if (u == tracked[ti]) { nu = m; break; }
                ++a.nu_sym[tracked_degrees[ti]][nu];
                if (sf) ++a.nu_conf[tracked_degrees[ti]][nu];
            }

            if (idx + 1 < e) {
                for (int j = 0;; ++j) {
                    std::uint8_t v = p.coeff(j);
                    if (v + 1u < q) {
                        p.coeff_ref(j) = v + 1;
                        break;
                    }
                    p.coeff_ref(j) = 0;
                }
            }
        }
    });

    // commutative merge
    std::vector<std::uint64_t> min_hist(n + 1, 0), max_hist(n + 1, 0);
    t.joint_sym.assign(static_cast<std::size_t>(n + 1) * t.d2 * t.d3, 0);
    t.joint_conf.assign(static_cast<std::size_t>(n + 1) * t.d2 * t.d3, 0);
    for (auto k : tracked_degrees) {
        t.nu_sym[k].assign(n / k + 1, 0);
        t.nu_conf[k].assign(n / k + 1, 0);
    }
    for (const auto& a : parts) {
        if (a.min_hist.empty()) continue; // worker saw an empty range
        t.irreducible += a.irreducible;
        t.squarefree += a.squarefree;
        for (std::uint32_t i = 0; i <= n; ++i) {
            min_hist[i] += a.min_hist[i];
            max_hist[i] += a.max_hist[i];
        }
        for (std::size_t i = 0; i < t.joint_sym.size(); ++i) {
            t.joint_sym[i] += a.joint_sym[i];
            t.joint_conf[i] += a.joint_conf[i];
        }
        for (const auto& [k, h] : a.nu_sym)
            for (std::size_t j = 0; j < h.size(); ++j) t.nu_sym[k][j] += h[j];
        for (const auto& [k, h] : a.nu_conf)
            for (std::size_t j = 0; j < h.size(); ++j) t.nu_conf[k][j] += h[j];
        for (const auto& [key, c] : a.profiles_sym) t.profiles_sym[key] += c;
        for (const auto& [key, c] : a.profiles_conf) t.profiles_conf[key] += c;
    }

    t.phi.assign(n + 1, 0);
    t.psi.assign(n + 1, 0);
    for (std::uint32_t m = 1; m <= n; ++m) {
        for (std::uint32_t d = m; d <= n; ++d) t.phi[m] += min_hist[d];
        for (std::uint32_t d = 1; d <= m; ++d) t.psi[m] += max_hist[d];
    }
    return t;
}

} // namespace cyclestat
