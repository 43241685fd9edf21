#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scarf/grid.hpp"

namespace scarf::analytic {

/// V(x) = -V1 sech^2 x + i V2 sech x tanh x with hbar^2 = 2mu = 1.
///
/// Only |V2| enters the spectrum. A negative V2 is the parity-reflected
/// potential; it is stored as the magnitude plus a `reflected` flag and
/// eigenstates are evaluated at -x.
struct PotentialParams {
    double v1 = 0.0;
    double v2_abs = 0.0;
    bool reflected = false;

    /// Validates v1 > 0 and finiteness; throws std::invalid_argument.
    static PotentialParams make(double v1, double v2);

    double v2_signed() const { return reflected ? -v2_abs : v2_abs; }
    cplx potential(double x) const;
};

enum class Phase { Real, Broken };
enum class Branch { Plus, Minus };

const char* to_string(Phase p);
const char* to_string(Branch b);
Branch parse_branch(const std::string& s);

struct SpectralIndices {
    double s = 0.0;
    cplx t;        // real t >= 0, or i*r in the broken phase
    double r = 0.0; // only meaningful when phase == Broken
    Phase phase = Phase::Real;
};

struct EigenLevel {
    int n = 0;
    Branch branch = Branch::Plus;
    cplx energy;
    Phase phase = Phase::Real;
};

struct LevelPair {
    int m = 0; // Plus-branch quantum number
    int n = 0; // Minus-branch quantum number
};

struct ExceptionalPoint {
    enum class Kind { Crossing, Coalescence };
    Kind kind = Kind::Crossing;
    double v2 = 0.0;
    int gap = 0; // m - n; 0 for coalescence
    std::vector<LevelPair> pairs;
};

/// Margin by which (s +- t - 1)/2 must exceed n for a level to exist.
inline constexpr double kExistenceMargin = 1e-12;

SpectralIndices indices(const PotentialParams& p);

/// Decay exponent Re((s +- t - 1)/2) of the branch at the given parameters.
double branch_order(const SpectralIndices& idx, Branch b);

bool level_exists(const PotentialParams& p, int n, Branch b);

/// Closed-form energy -(n - (s +- t - 1)/2)^2; throws NonexistentLevel.
cplx level_energy(const PotentialParams& p, int n, Branch b);

/// All existing levels, ordered by (n, branch) with Plus before Minus.
std::vector<EigenLevel> spectrum(const PotentialParams& p);

/// Unnormalized eigenstate with A = 1 (D = 1 in the broken phase):
///   (sech x)^{(s+-t-1)/2} exp[-i (s-+t)/2 atan(sinh x)] P_n^{(-+t,-s)}(i sinh x).
cplx eigenstate(const PotentialParams& p, int n, Branch b, double x);

/// Same state written as (1-z)^{-+t/2+1/4} (1+z)^{-s/2+1/4} P_n^{(-+t,-s)}(z), z = i sinh x.
cplx eigenstate_form2(const PotentialParams& p, int n, Branch b, double x);

/// Samples eigenstate() on a grid.
WavefunctionSample sample_eigenstate(const PotentialParams& p, int n, Branch b, const UniformGrid& grid);

/// Default grid for state comparisons: [-12, 12], 2401 nodes.
UniformGrid default_state_grid();

/// Accidental crossings V2* = V1 + 1/4 - j^2 (j >= 1, V2* > 0, at least one
/// existing pair) in order of increasing V2*, then the coalescence point
/// V2c = V1 + 1/4. Quantum numbers above n_max are ignored.
std::vector<ExceptionalPoint> crossings(double v1, int n_max = 64);

struct CrossingDependence {
    cplx ratio;      // median of psi^n_-(x) / psi^m_+(x)
    double flatness; // relative standard deviation of the pointwise ratio
    cplx predicted;  // 1 / identity_coefficient(m, m-n, -s)
};

/// Linear dependence of psi^m_+ and psi^n_- at a crossing. Requires t = m - n
/// within 1e-12 and both levels present; throws std::invalid_argument otherwise.
CrossingDependence crossing_dependence(const PotentialParams& p, int m, int n,
                                       const UniformGrid& grid = default_state_grid());

/// Smallest |V2| at which E^n_- exists in the real phase, or nullopt if it
/// never does there ((2n+1)^2 > 1/2 + 2 V1).
std::optional<double> branch_onset(double v1, int n);

/// Broken phase: max_x |conj(psi_+(-x)) - psi_-(x)| / max|psi_-|.
/// Real phase: max residual of PT psi_{+-} being proportional to psi_{+-}.
/// Throws NonexistentLevel if either branch lacks level n.
double pt_flip_residual(const PotentialParams& p, int n,
                        const UniformGrid& grid = default_state_grid());

struct Orthogonality {
    cplx integral; // int psi_1 psi_2 dx, no conjugation
    double scale;  // sqrt(int |psi_1|^2 dx * int |psi_2|^2 dx)
    UniformGrid grid;
};

/// Conjugation-free overlap of two levels. Without an explicit grid the
/// half-width is chosen from the combined decay exponent (12 to 100).
Orthogonality pt_orthogonality(const PotentialParams& p, int n1, Branch b1, int n2, Branch b2,
                               std::optional<UniformGrid> grid = std::nullopt);

} // namespace scarf::analytic
