#include "rieszcap/kernel.hpp"

#include <cmath>

namespace rieszcap {

double kernel_value(const RieszExponent& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("kernel_value: r must be > 0");
    if (p.is_zero()) return -std::log(r);
    return std::pow(r, -p.p());
}

double capacity_from_energy(const RieszExponent& p, const EnergyValue& v) {
    if (!v.is_finite()) {
        // finite-energy <=> positive-capacity; +infinity can only arise for
        // p >= 0 (enforced by EnergyValue)
        return 0.0;
    }
    const double V = v.value();
    if (p.is_zero()) return std::exp(-V);
    if (p.is_negative()) {
        if (V == 0.0) return 0.0;  // single point / empty-set convention
        return std::pow(V, -1.0 / p.p());
    }
    return std::pow(V, -1.0 / p.p());
}

}  // namespace rieszcap
