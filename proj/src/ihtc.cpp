#include "castkit/ihtc.hpp"

#include <cmath>
#include <stdexcept>

#include "castkit/errors.hpp"

namespace castkit {

void IhtcParams::validate() const {
    if (!std::isfinite(A) || A < 0.0)
        throw config_error("ihtc.A must be finite and >= 0");
    if (!std::isfinite(B))
        throw config_error("ihtc.B must be finite");
    if (!std::isfinite(t0) || t0 <= 0.0)
        throw config_error("ihtc.t0 must be finite and > 0");
}

double ihtc_eval(const IhtcParams& params, double t) {
    params.validate();
    if (!std::isfinite(t))
        throw std::invalid_argument("ihtc_eval: time must be finite");
    if (t <= 0.0 && params.B < 0.0)
        throw std::invalid_argument("ihtc_eval: the power law diverges at t <= 0 for B < 0");
    if (t < 0.0)
        throw std::invalid_argument("ihtc_eval: time must be non-negative");
    return params.A * std::pow(t / params.t0, params.B);
}

} // namespace castkit
