#pragma once

#include <complex>
#include <stdexcept>

#include "tripencil/scaled_value.hpp"

namespace tripencil {

enum class BranchNote {
    outside_unit,  // |z| > 1 and |w| > 1 (non-real lambda)
    boundary,      // at least one root on the unit circle within tolerance
    real_branch,   // both roots real (|lambda -+ c| > 2)
};

/// The auxiliary pair from the substitutions z + 1/z = lambda - c and
/// w + 1/w = lambda + c, with the branch |z| >= 1, |w| >= 1 selected.
struct ZWPair {
    Complex z;
    Complex w;
    BranchNote branch_note = BranchNote::outside_unit;
};

/// Relative tolerance for deciding that a root sits on the unit circle.
inline constexpr double kUnitCircleTol = 1e-9;

/// Solves the two quadratics for (z, w) picking the root of modulus >= 1;
/// for a real lambda inside a band both roots are unimodular conjugates and
/// the one with nonnegative imaginary part is returned.
ZWPair lambda_to_zw(Complex lambda, double c);

/// Inverse map: lambda = c + z + 1/z.  Throws on z == 0.
Complex zw_to_lambda(Complex z, double c);

/// beta_{m,n}(z,w) = (z^{m+1} - z^{-m-1})(w^{n+1} - w^{-n-1})
///                 + (z^m - z^{-m})(w^n - w^{-n});
/// its zeros in the |z|,|w| > 1 branch are the non-real pencil eigenvalues.
/// Computed with exponent-tracked powers; may collapse to inf as a plain
/// complex when the true value leaves the double range.
Complex beta(int mm, int nn, Complex z, Complex w);

/// beta divided by the dominant term z^{m+1} w^{n+1}; O(1) on the
/// |z|,|w| >= 1 branch, which makes it the meaningful eigenvalue residual.
Complex beta_normalized(int mm, int nn, Complex z, Complex w);

/// Same bilinear form with the minus sign (determinant identity side).
Complex gamma(int mm, int nn, Complex z, Complex w);

/// F_m(z) = (z^{m+1} - z^{-m-1}) / (z^m - z^{-m}).  Uses F_m(1/z) = F_m(z)
/// to move z outside the unit disk, then normalized powers, so no overflow.
/// Throws std::domain_error when the denominator vanishes (z^{2m} = 1).
Complex chebyshev_ratio(int mm, Complex z);

/// The continued-fraction form of the same ratio in zeta = z + 1/z:
/// f_1 = zeta, f_{k+1} = zeta - 1/f_k, with the extended-plane convention
/// 1/0 = inf, 1/inf = 0.  A final infinity comes back as (inf, 0).
Complex chebyshev_ratio_cf(int mm, Complex zeta);

/// G_m(s) = e^s tanh(m s), a strictly increasing lower bound for |F_m| at
/// |z| = e^s.  Requires s > 0.
double ratio_lower_bound(int mm, double s);

/// Factor polynomials of beta_{m,m}(z,z) z^{2m+2}:
///   factor1 = (z + i) z^{2m+1} - i (z - i),
///   factor2 = (z - i) z^{2m+1} + i (z + i).
Complex beta_factor1(int mm, Complex z);
Complex beta_factor2(int mm, Complex z);

/// For odd m, the unique y in (1, inf) with (y-1) y^{2m} - 1 - 1/y = 0;
/// z = iy then gives the purely imaginary eigenvalue pair of A_{m,m;0}.
/// Throws std::domain_error for even m (no imaginary-axis eigenvalues).
double imaginary_axis_root(int mm);

/// For m > 3, a root y in (5/4, 3/2) of
///   (-1)^m y^{2m+4} - 2 (-1)^m y^{2m+2} + 2 y^2 - 1,
/// giving the non-decaying imaginary eigenvalue of A_{m,1;0}.
double imaginary_axis_root_n1(int mm);

}  // namespace tripencil
