#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

namespace tripencil {

using Complex = std::complex<double>;

/// A complex number stored as mantissa * 2^exponent.
///
/// Determinant recurrences for the pencil reach magnitudes far beyond the
/// double range once N is in the thousands, so intermediate values carry an
/// explicit power-of-two scale.  A normalized ScaledValue has
/// |mantissa| in [1, 2), or mantissa == 0 with exponent == 0.
struct ScaledValue {
    Complex mantissa{0.0, 0.0};
    std::int64_t exponent = 0;

    static ScaledValue normalized(Complex value, std::int64_t exponent = 0) {
        ScaledValue sv{value, exponent};
        sv.normalize();
        return sv;
    }

    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }

    /// Rescales the mantissa by an exact power of two so |mantissa| lands in
    /// [1, 2).  The represented value is unchanged.
    void normalize() {
        const double mag = std::abs(mantissa);
        if (mag == 0.0 || !std::isfinite(mag)) {
            exponent = 0;
            return;
        }
        const int shift = std::ilogb(mag);
        if (shift != 0) {
            mantissa = Complex(std::ldexp(mantissa.real(), -shift),
                               std::ldexp(mantissa.imag(), -shift));
            exponent += shift;
        }
    }

    /// Collapses to a plain complex; overflows to inf / underflows to 0 when
    /// the exponent leaves the double range.
    Complex to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        const int e = static_cast<int>(std::clamp<std::int64_t>(exponent, -5000, 5000));
        return {std::ldexp(mantissa.real(), e), std::ldexp(mantissa.imag(), e)};
    }

    /// log2 of the magnitude (-inf for zero).  Safe at any exponent.
    double log2_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log2(std::abs(mantissa)) + static_cast<double>(exponent);
    }

    ScaledValue operator-() const { return {-mantissa, exponent}; }
};

/// Ratio of two scaled values as a plain complex; the exponents cancel
/// exactly (integer subtraction), so the result never over/underflows unless
/// the true ratio does.
inline Complex scaled_ratio(const ScaledValue& num, const ScaledValue& den) {
    const Complex q = num.mantissa / den.mantissa;
    const std::int64_t e = num.exponent - den.exponent;
    if (e == 0) return q;
    const int shift = static_cast<int>(std::clamp<std::int64_t>(e, -5000, 5000));
    return {std::ldexp(q.real(), shift), std::ldexp(q.imag(), shift)};
}

inline ScaledValue scaled_mul(const ScaledValue& a, const ScaledValue& b) {
    return ScaledValue::normalized(a.mantissa * b.mantissa, a.exponent + b.exponent);
}

inline ScaledValue scaled_div(const ScaledValue& a, const ScaledValue& b) {
    return ScaledValue::normalized(a.mantissa / b.mantissa, a.exponent - b.exponent);
}

inline ScaledValue scaled_add(const ScaledValue& a, const ScaledValue& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e = std::max(a.exponent, b.exponent);
    const auto down = [e](const ScaledValue& v) -> Complex {
        const int s = static_cast<int>(std::max<std::int64_t>(v.exponent - e, -2000));
        return {std::ldexp(v.mantissa.real(), s), std::ldexp(v.mantissa.imag(), s)};
    };
    return ScaledValue::normalized(down(a) + down(b), e);
}

/// base^exp with exponent tracking; exp may be negative (base != 0).
inline ScaledValue scaled_pow(Complex base, long exp) {
    if (exp == 0) return ScaledValue::normalized({1.0, 0.0});
    ScaledValue b = ScaledValue::normalized(base);
    if (exp < 0) {
        b = scaled_div(ScaledValue::normalized({1.0, 0.0}), b);
        exp = -exp;
    }
    ScaledValue acc = ScaledValue::normalized({1.0, 0.0});
    while (exp > 0) {
        if (exp & 1) acc = scaled_mul(acc, b);
        b = scaled_mul(b, b);
        exp >>= 1;
    }
    return acc;
}

/// |a - b| as a real-valued ScaledValue (alignment by powers of two, exact).
inline ScaledValue scaled_diff_abs(const ScaledValue& a, const ScaledValue& b) {
    if (a.is_zero()) return ScaledValue::normalized({std::abs(b.mantissa), 0.0}, b.exponent);
    if (b.is_zero()) return ScaledValue::normalized({std::abs(a.mantissa), 0.0}, a.exponent);
    const std::int64_t e = std::max(a.exponent, b.exponent);
    const auto down = [e](const ScaledValue& v) -> Complex {
        const int s = static_cast<int>(std::max<std::int64_t>(v.exponent - e, -2000));
        return {std::ldexp(v.mantissa.real(), s), std::ldexp(v.mantissa.imag(), s)};
    };
    return ScaledValue::normalized({std::abs(down(a) - down(b)), 0.0}, e);
}

/// a <= b in magnitude, overflow-free.
inline bool scaled_abs_leq(const ScaledValue& a, const ScaledValue& b) {
    return a.log2_abs() <= b.log2_abs();
}

}  // namespace tripencil
