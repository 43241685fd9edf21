#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace scarf {

using cplx = std::complex<double>;

/// Uniform 1-D grid x_i = x_min + i*h, i = 0..count-1.
struct UniformGrid {
    double x_min = 0.0;
    double h = 1.0;
    std::size_t count = 0;

    double x(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
    double x_max() const { return x(count == 0 ? 0 : count - 1); }

    /// Symmetric grid [-half_width, half_width] with `points` nodes.
    static UniformGrid symmetric(double half_width, std::size_t points);
};

/// Sampled complex wavefunction. The represented values are
/// values[i] * exp(log_scale); log_scale is nonzero only after overflow rescaling.
struct WavefunctionSample {
    UniformGrid grid;
    std::vector<cplx> values;
    double log_scale = 0.0;

    cplx value(std::size_t i) const;
    std::vector<cplx> scaled_values() const;
};

} // namespace scarf
