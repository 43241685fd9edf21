#include "scarf/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "scarf/error.hpp"
#include "scarf/numerics.hpp"
#include "scarf/special_fn.hpp"

namespace scarf::analytic {

namespace {

constexpr cplx I{0.0, 1.0};

// log(cosh x) without overflow.
double log_cosh(double x) {
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

double sign_of(Branch b) { return b == Branch::Plus ? 1.0 : -1.0; }

cplx branch_nu(const SpectralIndices& idx, Branch b) {
    return 0.5 * (idx.s + sign_of(b) * idx.t - 1.0);
}

void require_level(const PotentialParams& p, int n, Branch b) {
    if (!level_exists(p, n, b))
        throw NonexistentLevel("level n=" + std::to_string(n) + " (" + to_string(b) +
                               ") does not exist at V1=" + std::to_string(p.v1) +
                               ", |V2|=" + std::to_string(p.v2_abs));
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

std::vector<cplx> sample(const PotentialParams& p, int n, Branch b, const UniformGrid& g) {
    std::vector<cplx> out(g.count);
    for (std::size_t i = 0; i < g.count; ++i) out[i] = eigenstate(p, n, b, g.x(i));
    return out;
}

double median(std::vector<double> v) {
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

// Least-squares residual of `target` against c * `basis`, relative to max|basis|.
double proportionality_residual(const std::vector<cplx>& target, const std::vector<cplx>& basis) {
    cplx num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        num += std::conj(basis[i]) * target[i];
        den += std::norm(basis[i]);
    }
    const cplx c = num / den;
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        worst = std::max(worst, std::abs(target[i] - c * basis[i]));
    return worst / max_abs(basis);
}

} // namespace

PotentialParams PotentialParams::make(double v1, double v2) {
    if (!std::isfinite(v1) || !std::isfinite(v2))
        throw std::invalid_argument("PotentialParams: V1 and V2 must be finite");
    if (!(v1 > 0.0)) throw std::invalid_argument("PotentialParams: V1 must be positive");
    return {v1, std::abs(v2), v2 < 0.0};
}

cplx PotentialParams::potential(double x) const {
    const double sech = 1.0 / std::cosh(x);
    return {-v1 * sech * sech, v2_signed() * sech * std::tanh(x)};
}

const char* to_string(Phase p) { return p == Phase::Real ? "real" : "broken"; }
const char* to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

Branch parse_branch(const std::string& s) {
    if (s == "plus" || s == "+") return Branch::Plus;
    if (s == "minus" || s == "-") return Branch::Minus;
    throw std::invalid_argument("branch must be 'plus' or 'minus', got '" + s + "'");
}

SpectralIndices indices(const PotentialParams& p) {
    SpectralIndices idx;
    idx.s = std::sqrt(0.25 + p.v1 + p.v2_abs);
    const double t2 = (p.v1 + 0.25) - p.v2_abs;
    if (t2 >= 0.0) {
        idx.phase = Phase::Real;
        idx.t = std::sqrt(t2);
        idx.r = 0.0;
    } else {
        idx.phase = Phase::Broken;
        idx.r = std::sqrt(-t2);
        idx.t = cplx(0.0, idx.r);
    }
    return idx;
}

double branch_order(const SpectralIndices& idx, Branch b) { return branch_nu(idx, b).real(); }

bool level_exists(const PotentialParams& p, int n, Branch b) {
    if (n < 0) return false;
    return branch_order(indices(p), b) - n > kExistenceMargin;
}

cplx level_energy(const PotentialParams& p, int n, Branch b) {
    require_level(p, n, b);
    const cplx d = static_cast<double>(n) - branch_nu(indices(p), b);
    return -d * d;
}

std::vector<EigenLevel> spectrum(const PotentialParams& p) {
    const SpectralIndices idx = indices(p);
    std::vector<EigenLevel> levels;
    for (int n = 0;; ++n) {
        bool any = false;
        for (Branch b : {Branch::Plus, Branch::Minus}) {
            const cplx nu = branch_nu(idx, b);
            if (nu.real() - n <= kExistenceMargin) continue;
            any = true;
            const cplx d = static_cast<double>(n) - nu;
            cplx e = -d * d;
            if (idx.phase == Phase::Real) e.imag(0.0);
            levels.push_back({n, b, e, idx.phase});
        }
        if (!any) break;
    }
    return levels;
}

cplx eigenstate(const PotentialParams& p, int n, Branch b, double x) {
    require_level(p, n, b);
    if (p.reflected) x = -x;
    const SpectralIndices idx = indices(p);
    const double sg = sign_of(b);
    const cplx nu = branch_nu(idx, b);
    const double sh = std::sinh(x);
    const double theta = std::atan(sh);
    const cplx envelope = std::exp(-nu * log_cosh(x));
    const cplx phase = std::exp(-0.5 * I * (idx.s - sg * idx.t) * theta);
    const cplx poly = special::jacobi_eval({-sg * idx.t, cplx(-idx.s, 0.0), n}, I * sh);
    return envelope * phase * poly;
}

cplx eigenstate_form2(const PotentialParams& p, int n, Branch b, double x) {
    require_level(p, n, b);
    if (p.reflected) x = -x;
    const SpectralIndices idx = indices(p);
    const double sg = sign_of(b);
    const cplx z = I * std::sinh(x);
    const cplx left = std::pow(1.0 - z, -0.5 * sg * idx.t + 0.25);
    const cplx right = std::pow(1.0 + z, cplx(-0.5 * idx.s + 0.25, 0.0));
    return left * right * special::jacobi_eval({-sg * idx.t, cplx(-idx.s, 0.0), n}, z);
}

WavefunctionSample sample_eigenstate(const PotentialParams& p, int n, Branch b, const UniformGrid& grid) {
    return {grid, sample(p, n, b, grid), 0.0};
}

UniformGrid default_state_grid() { return UniformGrid::symmetric(12.0, 2401); }

std::vector<ExceptionalPoint> crossings(double v1, int n_max) {
    if (!(v1 > 0.0)) throw std::invalid_argument("crossings: V1 must be positive");
    const double v2c = v1 + 0.25;
    std::vector<ExceptionalPoint> out;
    for (int j = 1; static_cast<double>(j) * j < v2c; ++j) {
        const double v2 = v2c - static_cast<double>(j) * j;
        const auto p = PotentialParams::make(v1, v2);
        ExceptionalPoint ep{ExceptionalPoint::Kind::Crossing, v2, j, {}};
        for (int n = 0; n + j <= n_max; ++n) {
            if (!level_exists(p, n, Branch::Minus)) break;
            if (level_exists(p, n + j, Branch::Plus)) ep.pairs.push_back({n + j, n});
        }
        if (!ep.pairs.empty()) out.push_back(std::move(ep));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.v2 < b.v2; });

    const auto pc = PotentialParams::make(v1, v2c);
    ExceptionalPoint coal{ExceptionalPoint::Kind::Coalescence, v2c, 0, {}};
    for (int n = 0; n <= n_max && level_exists(pc, n, Branch::Plus) && level_exists(pc, n, Branch::Minus); ++n)
        coal.pairs.push_back({n, n});
    out.push_back(std::move(coal));
    return out;
}

CrossingDependence crossing_dependence(const PotentialParams& p, int m, int n, const UniformGrid& grid) {
    const SpectralIndices idx = indices(p);
    const int j = m - n;
    if (j < 1) throw std::invalid_argument("crossing_dependence: requires m > n");
    if (idx.phase != Phase::Real || std::abs(idx.t.real() - j) > 1e-12)
        throw std::invalid_argument("crossing_dependence: t = " + std::to_string(idx.t.real()) +
                                    " is not the integer m - n = " + std::to_string(j));
    require_level(p, m, Branch::Plus);
    require_level(p, n, Branch::Minus);

    const auto plus = sample(p, m, Branch::Plus, grid);
    const auto minus = sample(p, n, Branch::Minus, grid);
    const double cutoff = 1e-6 * max_abs(plus);

    std::vector<cplx> ratios;
    for (std::size_t i = 0; i < grid.count; ++i)
        if (std::abs(plus[i]) >= cutoff) ratios.push_back(minus[i] / plus[i]);

    std::vector<double> re(ratios.size()), im(ratios.size());
    std::transform(ratios.begin(), ratios.end(), re.begin(), [](cplx c) { return c.real(); });
    std::transform(ratios.begin(), ratios.end(), im.begin(), [](cplx c) { return c.imag(); });

    const cplx mean = std::accumulate(ratios.begin(), ratios.end(), cplx{}) / static_cast<double>(ratios.size());
    double var = 0.0;
    for (const auto& r : ratios) var += std::norm(r - mean);
    var /= static_cast<double>(ratios.size());

    CrossingDependence out;
    out.ratio = {median(re), median(im)};
    out.flatness = std::sqrt(var) / std::abs(mean);
    out.predicted = 1.0 / special::identity_coefficient(m, j, cplx(-idx.s, 0.0));
    return out;
}

std::optional<double> branch_onset(double v1, int n) {
    if (!(v1 > 0.0)) throw std::invalid_argument("branch_onset: V1 must be positive");
    if (n < 0) return std::nullopt;
    // s - t = d and s^2 + t^2 = 1/2 + 2 V1 give s + t = sqrt(1 + 4 V1 - d^2), 2 V2 = d (s + t).
    const double d = 2.0 * n + 1.0;
    const double sum_sq = 1.0 + 4.0 * v1 - d * d;
    if (sum_sq < d * d) return std::nullopt; // would need t < 0
    return 0.5 * d * std::sqrt(sum_sq);
}

double pt_flip_residual(const PotentialParams& p, int n, const UniformGrid& grid) {
    require_level(p, n, Branch::Plus);
    require_level(p, n, Branch::Minus);
    const auto plus = sample(p, n, Branch::Plus, grid);
    const auto minus = sample(p, n, Branch::Minus, grid);

    // PT psi(x) = conj(psi(-x)); on a symmetric grid -x_i is node count-1-i.
    auto pt = [&](const std::vector<cplx>& v) {
        std::vector<cplx> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::conj(v[v.size() - 1 - i]);
        return out;
    };
    if (std::abs(grid.x_min + grid.x_max()) > 1e-9 * grid.h)
        throw std::invalid_argument("pt_flip_residual: grid must be symmetric about x = 0");

    if (indices(p).phase == Phase::Broken) {
        const auto flipped = pt(plus);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.count; ++i) worst = std::max(worst, std::abs(flipped[i] - minus[i]));
        return worst / max_abs(minus);
    }
    return std::max(proportionality_residual(pt(plus), plus), proportionality_residual(pt(minus), minus));
}

Orthogonality pt_orthogonality(const PotentialParams& p, int n1, Branch b1, int n2, Branch b2,
                               std::optional<UniformGrid> grid) {
    require_level(p, n1, b1);
    require_level(p, n2, b2);
    UniformGrid g;
    if (grid) {
        g = *grid;
    } else {
        const SpectralIndices idx = indices(p);
        const double decay = (branch_order(idx, b1) - n1) + (branch_order(idx, b2) - n2);
        const double half = std::clamp(40.0 / decay, 12.0, 100.0);
        const double h = 0.01;
        g = UniformGrid::symmetric(half, static_cast<std::size_t>(std::ceil(2.0 * half / h)) + 1);
    }
    const auto f1 = sample(p, n1, b1, g);
    const auto f2 = sample(p, n2, b2, g);
    std::vector<cplx> prod(g.count), d1(g.count), d2(g.count);
    for (std::size_t i = 0; i < g.count; ++i) {
        prod[i] = f1[i] * f2[i];
        d1[i] = std::norm(f1[i]);
        d2[i] = std::norm(f2[i]);
    }
    const double n1sq = numerics::quadrature(d1, g.h).real();
    const double n2sq = numerics::quadrature(d2, g.h).real();
    return {numerics::quadrature(prod, g.h), std::sqrt(n1sq * n2sq), g};
}

} // namespace scarf::analytic
