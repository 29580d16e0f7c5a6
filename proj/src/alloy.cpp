#include "castkit/alloy.hpp"

#include <cmath>

#include "castkit/errors.hpp"

namespace castkit {

void AlloyProperties::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw config_error(std::string("alloy.") + name + " must be strictly positive");
    };
    positive(k_s, "k_s");
    positive(k_l, "k_l");
    positive(c_s, "c_s");
    positive(c_l, "c_l");
    positive(rho_s, "rho_s");
    positive(rho_l, "rho_l");
    positive(L, "latent_heat");
    if (!std::isfinite(T_f) || !std::isfinite(T_liq) || !std::isfinite(T_sol))
        throw config_error("alloy: temperatures must be finite");
    if (!(T_sol < T_liq && T_liq < T_f))
        throw config_error("alloy: t_sol < t_liq < t_f is required");
    if (!(k0 > 0.0 && k0 < 1.0))
        throw config_error("alloy.k0 must lie in (0, 1)");
}

} // namespace castkit
