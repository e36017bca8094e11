#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "tripencil/scaled_value.hpp"

namespace tripencil {

/// Eigenvalue in the scaled coordinates lambda = u + i v / N.
struct ScaledPoint {
    double u = 0.0;  // Re(lambda)
    double v = 0.0;  // N * Im(lambda)
};

inline ScaledPoint scale_eigenvalue(Complex lambda, int N) {
    return {lambda.real(), static_cast<double>(N) * lambda.imag()};
}

/// Envelope of the scaled imaginary parts for c = 0:
/// Lambda_0(u) = sqrt(4 - u^2) log tan(pi/4 + arccos(u/2)/2) on (0, 2).
/// Evaluated as sqrt(4-u^2) * atanh(sqrt(4-u^2)/2), an identical form that
/// stays fully accurate as u -> 2 where Lambda_0 ~ 2(2-u).
double envelope_c0(double u);

/// Predicted positive real parts for c = 0: 2 cos(2 pi k/(2m+1)),
/// k = 1..floor(m/2).  Negative counterparts follow by symmetry.
std::vector<double> real_part_grid(int mm);

/// Leading-order imaginary part log(m)/m of the purely imaginary pair
/// (odd m only; throws std::domain_error for even m).
double imag_pair_estimate(int mm);

/// max(log(m)/m, log(n)/n): the uniform decay rate of |Im lambda|.
double imag_bound_estimate(int mm, int nn);

struct CircleParams {
    Complex center;
    double radius = 0.0;
};

/// The Apollonius locus |zeta - 1/xi| = kappa |zeta - xi| as a circle.
/// Requires xi != 0, kappa > 0, kappa != 1 (kappa = 1 gives a line).
CircleParams apollonius_circle(Complex xi, double kappa);

/// X_{c,u}(v) = tanh(v / (2 sqrt(4-(u-c)^2))) tanh(v / (2 sqrt(4-(u+c)^2))),
/// strictly increasing from 0 to 1 on v > 0.  Domain: 0<c<2, 0<u<2-c, v>0.
double envelope_transfer(double c, double u, double v);

/// Lambda_c(u): the unique v with X_{c,u}(v) equal to
/// tan(arccos((u-c)/2)/2) tan(arccos((u+c)/2)/2), found by a doubling
/// bracket plus bisection.  Returns +inf once the bracket exceeds the cap
/// (the target tends to 1 as u -> 0, where v is unbounded).
double envelope_c(double c, double u);

/// Intersection test for the two zeta-circles of the c != 0 analysis:
/// the raw |a1-a2|^2 <= (rho1+rho2)^2 form, and the reduced
/// tanh(s0) tanh(t0) <= tan(theta/2) tan(phi/2) form.  The reduction is an
/// identity on the ansatz domain theta + phi < pi (where the angles come
/// from arccos((u-+c)/2) with u > 0); there the two agree up to rounding at
/// the tangency boundary.  intersect_condition uses the metric form, which
/// is total in (0,pi)^2 and robust at the s0, t0 -> inf limit.
bool circles_intersect_metric(double theta, double phi, double s0, double t0);
bool circles_intersect_reduced(double theta, double phi, double s0, double t0);
bool intersect_condition(double theta, double phi, double s0, double t0);

struct CurveSample {
    double u = 0.0;
    double value = 0.0;  // +inf marks an unbounded envelope value
};

/// Uniform samples of the bounding curve: Lambda_0 on (0,2) for c = 0,
/// Lambda_c on (0, 2-c) for 0 < c < 2, endpoints trimmed by 1e-6.
/// Throws std::domain_error for c >= 2 (no non-real spectrum to bound).
std::vector<CurveSample> sample_envelope(double c, int samples);

}  // namespace tripencil
