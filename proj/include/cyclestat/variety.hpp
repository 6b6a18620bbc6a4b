#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclestat/errors.hpp"
#include "cyclestat/numeric.hpp"
#include "cyclestat/power_series.hpp"

namespace cyclestat {

enum class DescriptorKind { weil, point_counts, affine, projective, elliptic };

inline const char* kind_name(DescriptorKind k) {
    switch (k) {
        case DescriptorKind::weil: return "weil";
        case DescriptorKind::point_counts: return "point_counts";
        case DescriptorKind::affine: return "affine";
        case DescriptorKind::projective: return "projective";
        case DescriptorKind::elliptic: return "elliptic";
    }
    return "?";
}

/// A variety over F_q presented by Weil polynomials, raw point counts, or a
/// named built-in. This is the sole input to every counting operation.
class VarietyDescriptor {
public:
    DescriptorKind kind;
    std::int64_t q = 2;
    std::int32_t d = 1;
    std::vector<std::vector<Int>> polys; // weil & builtins: P_0..P_2d, ascending coefficients
    std::vector<Int> counts;             // point_counts: |V(F_{q^k})|, k = 1..K
    std::int64_t trace = 0;              // elliptic curve Frobenius trace

    static VarietyDescriptor affine_space(std::int64_t q, std::int32_t d) {
        VarietyDescriptor v;
        v.kind = DescriptorKind::affine;
        v.q = q;
        v.d = d;
        v.polys.assign(2 * d + 1, {Int(1)});
        v.polys[2 * d] = {Int(1), -int_pow(Int(q), d)};
        v.validate_common();
        return v;
    }

    static VarietyDescriptor projective_space(std::int64_t q, std::int32_t d) {
        VarietyDescriptor v;
        v.kind = DescriptorKind::projective;
        v.q = q;
        v.d = d;
        v.polys.assign(2 * d + 1, {Int(1)});
        for (std::int32_t i = 0; i <= d; ++i) v.polys[2 * i] = {Int(1), -int_pow(Int(q), i)};
        v.validate_common();
        return v;
    }

    static VarietyDescriptor elliptic_curve(std::int64_t q, std::int64_t a) {
        VarietyDescriptor v;
        v.kind = DescriptorKind::elliptic;
        v.q = q;
        v.d = 1;
        v.trace = a;
        if (Int(a) * a > 4 * Int(q))
            throw InconsistentDescriptor("elliptic trace violates the Hasse bound |a| <= 2*sqrt(q)");
        v.polys = {{Int(1), Int(-1)}, {Int(1), Int(-a), Int(q)}, {Int(1), Int(-q)}};
        v.validate_common();
        return v;
    }

    static VarietyDescriptor from_weil(std::int64_t q, std::int32_t d,
                                       std::vector<std::vector<Int>> ps) {
        VarietyDescriptor v;
        v.kind = DescriptorKind::weil;
        v.q = q;
        v.d = d;
        v.polys = std::move(ps);
        if (v.polys.size() != static_cast<std::size_t>(2 * d + 1))
            throw InconsistentDescriptor("weil descriptor needs exactly 2d+1 polynomials");
        for (const auto& p : v.polys)
            if (p.empty() || p[0] != 1)
                throw InconsistentDescriptor("every Weil polynomial must have constant term 1");
        std::vector<Int> expect = {Int(1), -int_pow(Int(q), d)};
        std::vector<Int> top = v.polys[2 * d];
        while (top.size() > 2 && top.back() == 0) top.pop_back();
        if (top != expect)
            throw InconsistentDescriptor("P_2d must equal 1 - q^d t");
        v.validate_common();
        return v;
    }

    static VarietyDescriptor from_point_counts(std::int64_t q, std::int32_t d,
                                               std::vector<Int> cs) {
        VarietyDescriptor v;
        v.kind = DescriptorKind::point_counts;
        v.q = q;
        v.d = d;
        v.counts = std::move(cs);
        for (const Int& c : v.counts)
            if (c < 0) throw InconsistentDescriptor("negative point count");
        v.validate_common();
        return v;
    }

    bool has_rational_zeta() const { return kind != DescriptorKind::point_counts; }

    /// Z(V,t) = prod odd P_i / prod even P_i as one rational function.
    RationalFunction zeta() const {
        if (!has_rational_zeta())
            throw NotRational("point-count descriptors carry no rational zeta function");
        std::vector<Int> num = {Int(1)}, den = {Int(1)};
        for (std::size_t i = 0; i < polys.size(); ++i) {
            auto& target = (i % 2 == 1) ? num : den;
            target = poly_mul(target, polys[i]);
        }
        return RationalFunction(std::move(num), std::move(den));
    }

    std::string label() const {
        std::string s = kind_name(kind);
        s += "(q=" + std::to_string(q);
        if (kind == DescriptorKind::elliptic) s += ",a=" + std::to_string(trace);
        else s += ",d=" + std::to_string(d);
        s += ")";
        return s;
    }

    static std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> r(a.size() + b.size() - 1);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        }
        return r;
    }

private:
    void validate_common() const {
        if (prime_power_base(static_cast<std::uint64_t>(q < 2 ? 0 : q)) == 0)
            throw InconsistentDescriptor("q must be a prime power >= 2");
        if (d < 1) throw InconsistentDescriptor("dimension must be >= 1");
    }
};

} // namespace cyclestat
