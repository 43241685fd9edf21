#include "scarf/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace scarf {

UniformGrid UniformGrid::symmetric(double half_width, std::size_t points) {
    if (!(half_width > 0.0) || points < 2)
        throw std::invalid_argument("UniformGrid::symmetric: need half_width > 0 and >= 2 points");
    return {-half_width, 2.0 * half_width / static_cast<double>(points - 1), points};
}

cplx WavefunctionSample::value(std::size_t i) const {
    return log_scale == 0.0 ? values.at(i) : values.at(i) * std::exp(log_scale);
}

std::vector<cplx> WavefunctionSample::scaled_values() const {
    if (log_scale == 0.0) return values;
    const double f = std::exp(log_scale);
    std::vector<cplx> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * f;
    return out;
}

} // namespace scarf
