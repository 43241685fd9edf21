#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "scarf/analytic.hpp"
#include "scarf/grid.hpp"

namespace scarf::numerics {

using analytic::Branch;
using analytic::Phase;
using analytic::PotentialParams;

/// Shooting grid. The match point is snapped to the nearest node.
struct Grid {
    double x_min = -15.0;
    double x_max = 15.0;
    double h = 1e-3;
    double x_match = 0.0;

    /// Throws std::invalid_argument on a malformed grid.
    void validate() const;
    std::size_t node_count() const;
    std::size_t match_index() const;
    UniformGrid uniform() const { return {x_min, h, node_count()}; }
};

enum class Direction { LeftToRight, RightToLeft };

/// Starting values for a Numerov sweep: either the free decaying exponential
/// (e^{kappa x} from the left, e^{-kappa x} from the right, kappa = sqrt(-E)
/// with Re kappa > 0), or two explicit values at the first two nodes.
struct Seed {
    enum class Kind { Decaying, Explicit };
    Kind kind = Kind::Decaying;
    cplx first;
    cplx second;

    static Seed decaying() { return {}; }
    static Seed explicit_values(cplx first, cplx second) { return {Kind::Explicit, first, second}; }
};

/// Integrates psi'' = (V(x) - E) psi over every node of `grid` with the
/// fourth-order Numerov recurrence in complex arithmetic. Values above 1e100
/// trigger an exact rescale by 2^-332 tracked in log_scale.
/// Throws SolverError(NonFinite) on overflow to inf/nan.
WavefunctionSample numerov_propagate(const PotentialParams& p, cplx energy, const UniformGrid& grid,
                                     Direction direction, Seed seed = Seed::decaying());

struct ShootingOptions {
    double tol = 1e-12;
    int max_iterations = 60;
    double step_clamp = 0.1; // fraction of the local level-spacing estimate
    bool resolve_clusters = true;
    double cluster_radius = 0.0; // search circle; <= 0: 0.02 * level spacing
    double merge_radius = 0.0;   // two roots closer than this are one split double root; <= 0: 1e3 h^2
};

struct ShootingResult {
    cplx energy;
    cplx mismatch; // discrete Wronskian at the match point, normalized
    int iterations = 0;
    bool converged = false;
    int multiplicity = 1; // 2: discretization-split double root, energy is the pair mean
    double split = 0.0;   // distance between the two roots when multiplicity == 2
};

struct Mismatch {
    cplx value;   // (psiL_m psiR_{m+1} - psiR_m psiL_{m+1}) / h, holomorphic in E
    double scale; // same-units magnitude used to normalize value
};

/// Discrete Wronskian of the left- and right-decaying solutions at the match point.
Mismatch matching_function(const PotentialParams& p, cplx energy, const Grid& grid);

/// Muller iteration (secant fallback) on matching_function.
/// Throws SolverError(MaxIterations | DivergedOutOfWindow).
ShootingResult shoot_eigenvalue(const PotentialParams& p, cplx guess, const Grid& grid = {},
                                const ShootingOptions& opts = {});

/// Eigenstate at a converged energy: left solution up to the match point,
/// right solution beyond it, joined continuously.
WavefunctionSample shot_eigenstate(const PotentialParams& p, cplx energy, const Grid& grid = {});

struct ShotLevel {
    cplx energy;
    int multiplicity = 1; // number of warm starts that landed on this root
    int iterations = 0;
};

/// Shoots from every guess and merges roots closer than 1e-8 (relative).
std::vector<ShotLevel> shoot_levels(const PotentialParams& p, std::span<const cplx> guesses,
                                    const Grid& grid = {}, const ShootingOptions& opts = {});

struct CurvePoint {
    double v2 = 0.0;
    bool exists = false;
    cplx energy; // NaN when the level does not exist
    Phase phase = Phase::Real;
    int iterations = 0;
};

/// Continuation of one level in V2 with warm starts. `steps` >= 2 is the
/// number of sampled V2 values including both ends. Solver failures are
/// rethrown as SolverError naming the V2 at which they occurred.
std::vector<CurvePoint> trace_curve(double v1, int n, Branch branch, double v2_from, double v2_to, int steps,
                                    const Grid& grid = {}, const ShootingOptions& opts = {});

/// Jost coefficient: propagate the solution that is exactly e^{ikx} at
/// x_max (k = sqrt(E), Im k >= 0) leftward and return the coefficient of
/// e^{ikx} at x_min. Zeros on the negative real axis are bound states.
/// Throws std::invalid_argument for E = 0 and SolverError(IllConditioned)
/// when the two free modes cannot be separated.
cplx jost_a(const PotentialParams& p, cplx energy, const Grid& grid = {});

struct PoleScanOptions {
    double e_min = -13.0;
    double e_max = -0.01;
    int points = 2000;
};

struct Pole {
    double energy = 0.0;
    double abs_a = 0.0;
};

/// Local minima of |a(E)| on a uniform grid, golden-section refined, kept
/// when the refined minimum is far below its scan neighbours.
std::vector<Pole> scan_poles(const PotentialParams& p, const PoleScanOptions& opts = {}, const Grid& grid = {});

struct WronskianReport {
    double w_max = 0.0;          // max |W(x)|
    double w_scale = 0.0;        // max (|a||b'| + |b||a'|)
    double constancy = 0.0;      // max |W(x) - W(x_mid)| / |W(x_mid)|
    double ratio_flatness = 0.0; // relative std of a/b where |b| is not negligible
};

/// W = a b' - b a' with fourth-order centered derivatives.
/// Throws std::invalid_argument if the grids differ.
WronskianReport wronskian_test(const WavefunctionSample& a, const WavefunctionSample& b);

/// Composite Simpson on a uniform grid; an odd interval count gets a
/// trapezoid panel at the end.
cplx quadrature(std::span<const cplx> f, double h);
cplx quadrature(std::span<const double> f, double h);

} // namespace scarf::numerics
