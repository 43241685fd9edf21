#include <cmath>
#include <stdexcept>
#include <string>

#include "scarf/error.hpp"
#include "scarf/numerics.hpp"

namespace scarf::numerics {

namespace {

constexpr double kOverflowGuard = 1e100;
constexpr int kRescaleExponent = 332; // 2^332 ~ 8.7e99

} // namespace

void Grid::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("Grid: step must be positive");
    if (!(x_min < x_match && x_match < x_max))
        throw std::invalid_argument("Grid: need x_min < x_match < x_max");
    const double intervals = (x_max - x_min) / h;
    if (std::abs(intervals - std::round(intervals)) > 1e-9 * std::max(1.0, intervals))
        throw std::invalid_argument("Grid: (x_max - x_min)/h must be an integer");
    const std::size_t m = match_index();
    if (m < 2 || m + 3 > node_count()) throw std::invalid_argument("Grid: match point too close to an edge");
}

std::size_t Grid::node_count() const {
    return static_cast<std::size_t>(std::llround((x_max - x_min) / h)) + 1;
}

std::size_t Grid::match_index() const {
    return static_cast<std::size_t>(std::llround((x_match - x_min) / h));
}

WavefunctionSample numerov_propagate(const PotentialParams& p, cplx energy, const UniformGrid& grid,
                                     Direction direction, Seed seed) {
    const std::size_t n = grid.count;
    if (n == 0) throw std::invalid_argument("numerov_propagate: empty grid");

    WavefunctionSample out{grid, std::vector<cplx>(n), 0.0};
    auto& psi = out.values;
    const bool forward = direction == Direction::LeftToRight;
    auto node = [&](std::size_t k) { return forward ? k : n - 1 - k; };

    if (seed.kind == Seed::Kind::Decaying) {
        const cplx kappa = std::sqrt(-energy);
        if (!(kappa.real() > 0.0))
            throw std::invalid_argument("numerov_propagate: decaying seed needs Re sqrt(-E) > 0");
        const double sgn = forward ? 1.0 : -1.0;
        seed.first = std::exp(sgn * kappa * grid.x(node(0)));
        seed.second = n > 1 ? std::exp(sgn * kappa * grid.x(node(1))) : cplx{};
    }
    psi[node(0)] = seed.first;
    if (n == 1) return out;
    psi[node(1)] = seed.second;

    const double h2 = grid.h * grid.h;
    auto g = [&](std::size_t i) { return p.potential(grid.x(i)) - energy; };

    cplx g_prev = g(node(0));
    cplx g_cur = g(node(1));
    cplx w_prev = (1.0 - h2 / 12.0 * g_prev) * psi[node(0)];
    cplx w_cur = (1.0 - h2 / 12.0 * g_cur) * psi[node(1)];

    for (std::size_t k = 1; k + 1 < n; ++k) {
        const std::size_t i = node(k);
        const std::size_t next = node(k + 1);
        const cplx w_next = 2.0 * w_cur - w_prev + h2 * g_cur * psi[i];
        const cplx g_next = g(next);
        const cplx value = w_next / (1.0 - h2 / 12.0 * g_next);
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
            throw SolverError(SolverError::Kind::NonFinite,
                              "numerov_propagate: non-finite value at x = " + std::to_string(grid.x(next)) +
                                  " (E = " + std::to_string(energy.real()) + (energy.imag() < 0 ? "" : "+") +
                                  std::to_string(energy.imag()) + "i)");
        psi[next] = value;
        w_prev = w_cur;
        w_cur = w_next;
        g_cur = g_next;

        if (std::abs(value) > kOverflowGuard) {
            const double f = std::ldexp(1.0, -kRescaleExponent);
            for (std::size_t q = 0; q <= k + 1; ++q) psi[node(q)] *= f;
            w_prev *= f;
            w_cur *= f;
            out.log_scale += kRescaleExponent * std::log(2.0);
        }
    }
    return out;
}

cplx quadrature(std::span<const cplx> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return {};
    std::size_t intervals = n - 1;
    cplx tail{};
    if (intervals % 2 == 1) {
        tail = 0.5 * h * (f[n - 2] + f[n - 1]);
        --intervals;
    }
    if (intervals == 0) return tail;
    cplx sum = f[0] + f[intervals];
    for (std::size_t i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    return sum * (h / 3.0) + tail;
}

cplx quadrature(std::span<const double> f, double h) {
    std::vector<cplx> c(f.begin(), f.end());
    return quadrature(std::span<const cplx>(c), h);
}

} // namespace scarf::numerics
