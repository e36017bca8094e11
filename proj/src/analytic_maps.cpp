#include "tripencil/analytic_maps.hpp"

#include <cmath>
#include <limits>

namespace tripencil {

namespace {

constexpr Complex kImagUnit{0.0, 1.0};

// Larger-modulus root of zeta^2 - b zeta + 1 = 0.  The sign of the square
// root is chosen to avoid the cancelling branch; for real b in [-2, 2] the
// principal square root of the negative discriminant lands the result on the
// upper half of the unit circle (the nonnegative-imaginary-part tie-break).
Complex outer_quadratic_root(Complex b) {
    const Complex s = std::sqrt(b * b - 4.0);
    const Complex root = (std::real(std::conj(b) * s) >= 0.0) ? (b + s) / 2.0 : (b - s) / 2.0;
    if (std::abs(root) < 1.0) return 1.0 / root;  // guard against rounding at |root| ~ 1
    return root;
}

bool on_unit_circle(Complex zeta) { return std::abs(std::abs(zeta) - 1.0) <= kUnitCircleTol; }

// z^k - z^{-k} with exponent tracking.
ScaledValue power_gap(Complex z, long k) {
    return scaled_add(scaled_pow(z, k), -scaled_pow(z, -k));
}

}  // namespace

ZWPair lambda_to_zw(Complex lambda, double c) {
    ZWPair out;
    out.z = outer_quadratic_root(lambda - c);
    out.w = outer_quadratic_root(lambda + c);
    if (on_unit_circle(out.z) || on_unit_circle(out.w))
        out.branch_note = BranchNote::boundary;
    else if (out.z.imag() == 0.0 && out.w.imag() == 0.0)
        out.branch_note = BranchNote::real_branch;
    else
        out.branch_note = BranchNote::outside_unit;
    return out;
}

Complex zw_to_lambda(Complex z, double c) {
    if (z == Complex(0.0, 0.0)) throw std::invalid_argument("zw_to_lambda: z must be nonzero");
    return Complex(c, 0.0) + z + 1.0 / z;
}

Complex beta(int mm, int nn, Complex z, Complex w) {
    if (z == Complex(0.0, 0.0) || w == Complex(0.0, 0.0))
        throw std::invalid_argument("beta: z and w must be nonzero");
    const ScaledValue lead = scaled_mul(power_gap(z, mm + 1), power_gap(w, nn + 1));
    const ScaledValue trail = scaled_mul(power_gap(z, mm), power_gap(w, nn));
    return scaled_add(lead, trail).to_complex();
}

Complex gamma(int mm, int nn, Complex z, Complex w) {
    if (z == Complex(0.0, 0.0) || w == Complex(0.0, 0.0))
        throw std::invalid_argument("gamma: z and w must be nonzero");
    const ScaledValue lead = scaled_mul(power_gap(z, mm + 1), power_gap(w, nn + 1));
    const ScaledValue trail = scaled_mul(power_gap(z, mm), power_gap(w, nn));
    return scaled_add(lead, -trail).to_complex();
}

Complex beta_normalized(int mm, int nn, Complex z, Complex w) {
    if (z == Complex(0.0, 0.0) || w == Complex(0.0, 0.0))
        throw std::invalid_argument("beta_normalized: z and w must be nonzero");
    const Complex zi = 1.0 / z;
    const Complex wi = 1.0 / w;
    const Complex lead = (1.0 - scaled_pow(zi, 2 * mm + 2).to_complex()) *
                         (1.0 - scaled_pow(wi, 2 * nn + 2).to_complex());
    const Complex trail = zi * wi * (1.0 - scaled_pow(zi, 2 * mm).to_complex()) *
                          (1.0 - scaled_pow(wi, 2 * nn).to_complex());
    return lead + trail;
}

Complex chebyshev_ratio(int mm, Complex z) {
    if (mm < 1) throw std::invalid_argument("chebyshev_ratio: m must be >= 1");
    if (z == Complex(0.0, 0.0)) throw std::invalid_argument("chebyshev_ratio: z must be nonzero");
    if (std::abs(z) < 1.0) z = 1.0 / z;  // F_m(1/z) = F_m(z)
    const Complex zi = 1.0 / z;
    const Complex t = scaled_pow(zi, 2 * mm).to_complex();  // |t| <= 1
    const Complex den = 1.0 - t;
    if (den == Complex(0.0, 0.0))
        throw std::domain_error("chebyshev_ratio: undefined, z^{2m} = 1");
    return z * (1.0 - t * zi * zi) / den;
}

Complex chebyshev_ratio_cf(int mm, Complex zeta) {
    if (mm < 1) throw std::invalid_argument("chebyshev_ratio_cf: m must be >= 1");
    Complex value = zeta;
    bool infinite = false;
    for (int k = 1; k < mm; ++k) {
        if (infinite) {
            value = zeta;  // zeta - 1/inf
            infinite = false;
        } else if (value == Complex(0.0, 0.0)) {
            infinite = true;
        } else {
            value = zeta - 1.0 / value;
        }
    }
    if (infinite) return {std::numeric_limits<double>::infinity(), 0.0};
    return value;
}

double ratio_lower_bound(int mm, double s) {
    if (mm < 1) throw std::invalid_argument("ratio_lower_bound: m must be >= 1");
    if (!(s > 0.0)) throw std::domain_error("ratio_lower_bound: requires s > 0");
    return std::exp(s) * std::tanh(static_cast<double>(mm) * s);
}

Complex beta_factor1(int mm, Complex z) {
    const Complex zp = scaled_pow(z, 2 * mm + 1).to_complex();
    return (z + kImagUnit) * zp - kImagUnit * (z - kImagUnit);
}

Complex beta_factor2(int mm, Complex z) {
    const Complex zp = scaled_pow(z, 2 * mm + 1).to_complex();
    return (z - kImagUnit) * zp + kImagUnit * (z + kImagUnit);
}

namespace {

// f_m(y) = (y-1) y^{2m} - 1 - 1/y.  Overflow to +inf at the bracket's upper
// end is harmless: only the sign is used there.
double odd_axis_fn(int mm, double y) {
    return (y - 1.0) * std::pow(y, 2.0 * mm) - 1.0 - 1.0 / y;
}

double odd_axis_fn_deriv(int mm, double y) {
    const double p = std::pow(y, 2.0 * mm);
    return p + (y - 1.0) * 2.0 * mm * p / y + 1.0 / (y * y);
}

}  // namespace

double imaginary_axis_root(int mm) {
    if (mm < 1) throw std::invalid_argument("imaginary_axis_root: m must be >= 1");
    if (mm % 2 == 0)
        throw std::domain_error("imaginary_axis_root: no imaginary-axis root for even m");

    double lo = 1.0 + 1e-12;
    double hi = 2.0;  // f_m(2) = 2^{2m} - 3/2 > 0 for every m >= 1
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (odd_axis_fn(mm, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int iter = 0; iter < 8; ++iter) {
        const double f = odd_axis_fn(mm, y);
        const double scale = (y - 1.0) * std::pow(y, 2.0 * mm) + 1.0 + 1.0 / y;
        if (std::abs(f) <= 1e-13 * scale) break;
        const double step = f / odd_axis_fn_deriv(mm, y);
        const double next = y - step;
        if (!(next > lo && next < hi)) break;
        y = next;
    }
    return y;
}

double imaginary_axis_root_n1(int mm) {
    if (mm <= 3) throw std::invalid_argument("imaginary_axis_root_n1: requires m > 3");
    // g_m(y) / y^{2m+2}: same sign and roots on y > 0, no overflow at any m.
    const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
    const auto g = [&](double y) {
        return sign * (y * y - 2.0) + (2.0 * y * y - 1.0) * std::pow(y, -2.0 * mm - 2.0);
    };
    double lo = 1.25, hi = 1.5;
    double glo = g(lo), ghi = g(hi);
    if (!(glo * ghi < 0.0))
        throw std::logic_error("imaginary_axis_root_n1: bracket does not change sign");
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-15 * hi; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (glo * gm < 0.0) {
            hi = mid;
            ghi = gm;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace tripencil
