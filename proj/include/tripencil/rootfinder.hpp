#pragma once

#include <vector>

#include "tripencil/pencil.hpp"

namespace tripencil {

struct SolverOptions {
    double tol = 1e-13;                // Aberth correction threshold (relative)
    int max_iter = 200;                // sweep cap
    double residual_tolerance = 1e-9;  // accepted |p| relative to local scale
    double real_threshold = 1e-10;     // |Im| below this snaps to the axis
    double cluster_radius_rel = 1e-7;  // base clustering radius (relative)
    double pairing_tolerance = 1e-8;   // conjugate/partner matching
    double merge_scan_radius_rel = 5e-4;  // candidate radius for validated merges
    int grid_points = 4001;            // real_axis_scan resolution
    bool extended_polish = false;      // 80-bit final polish (auto for N > 2000)
    std::vector<Complex> warm_start;   // optional initial iterates (size N)
};

struct Eigenvalue {
    Complex value;
    double residual = 0.0;  // |p(value)| relative to the local recurrence scale
    int algebraic_multiplicity = 1;
    bool is_real = false;
    int newton_steps = 0;  // polish iterations spent on this root
};

struct Spectrum {
    PencilSpec spec;
    std::vector<Eigenvalue> eigenvalues;  // sorted by (Re, Im)
    int iterations = 0;
    bool converged = false;

    int total_multiplicity() const;
    double max_abs() const;
    double max_imag_abs() const;
    /// Eigenvalues repeated by algebraic multiplicity.
    std::vector<Complex> values_with_multiplicity() const;
};

/// Deterministic start points: for m = n, c = 0, m >= 2 the closed-form
/// predicted positions (real-part grid with the scaled envelope, plus the
/// imaginary pair for odd m); otherwise N points on the circle of radius
/// 0.9 (2+|c|) with a 0.5/N radian offset that breaks the axis symmetry.
std::vector<Complex> initial_guesses(const PencilSpec& spec, const SolverOptions& opts);

/// Merges converged iterates into eigenvalues with multiplicities.  A merge
/// of k iterates is accepted only if, after a Newton polish on p^(k-1), all
/// of p, p', ..., p^(k-1) sit at the measured evaluation-noise floor; this
/// resolves genuinely close simple pairs that a fixed radius would conflate
/// and recognises multiple roots whose iterate spread exceeds any fixed
/// radius.  Near-real values are snapped to the axis and re-polished there.
std::vector<Eigenvalue> classify_and_cluster(const std::vector<Complex>& raw,
                                             const PencilSpec& spec,
                                             const SolverOptions& opts);

/// All N roots of det(H_{N;c} - lambda D) by simultaneous Aberth-Ehrlich
/// iteration on the O(N) Newton ratio (Jacobi-style sweeps).  A root is
/// accepted when its correction drops below tol (1+|lambda|) or when |p| at
/// the iterate is at the evaluation-noise floor; converged reports whether
/// every root was accepted within max_iter sweeps.
Spectrum compute_spectrum(const PencilSpec& spec, const SolverOptions& opts = {});

/// Simple real roots located by sign changes of p on a uniform grid over
/// [-2-|c|, 2+|c|] plus bisection.  Even-multiplicity roots produce no sign
/// change and are intentionally not reported.
std::vector<double> real_axis_scan(const PencilSpec& spec, const SolverOptions& opts = {});

/// Hausdorff distance between two finite point sets.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace tripencil
