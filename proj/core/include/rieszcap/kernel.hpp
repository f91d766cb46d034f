#ifndef RIESZCAP_KERNEL_HPP
#define RIESZCAP_KERNEL_HPP

// Riesz and logarithmic kernels, and the energy <-> capacity conversion.
// Energies are extended reals (finite or +infinity) carried by EnergyValue so
// the sign conventions around p = 0 and the empty-set conventions are
// type-checked instead of encoded in sentinel doubles.

#include <stdexcept>

namespace rieszcap {

enum class Regime { negative, zero, positive };

// Kernel exponent p together with its regime. The regime decides both the
// kernel (r^-p vs log(1/r)) and the optimization direction (minimize for
// p >= 0, maximize for p < 0), so it is classified once and carried along.
class RieszExponent {
  public:
    explicit RieszExponent(double p)
        : p_(p), regime_(p < 0 ? Regime::negative
                                : (p > 0 ? Regime::positive : Regime::zero)) {}

    double p() const { return p_; }
    Regime regime() const { return regime_; }
    bool is_negative() const { return regime_ == Regime::negative; }
    bool is_zero() const { return regime_ == Regime::zero; }
    bool is_positive() const { return regime_ == Regime::positive; }
    // true when the energy extremum is a minimum (p >= 0), false for p < 0
    bool minimizes() const { return regime_ != Regime::negative; }

  private:
    double p_;
    Regime regime_;
};

// How an energy value was produced; informational only.
enum class EnergySource { direct_sum, gotz_radial, gotz_spatial, closed_form, solver };

class EnergyValue {
  public:
    static EnergyValue finite(double v, RieszExponent p,
                              EnergySource src = EnergySource::direct_sum) {
        if (p.is_positive() && !(v > 0.0))
            throw std::invalid_argument(
                "EnergyValue: finite energy must be > 0 when p > 0");
        return EnergyValue(v, true, p, src);
    }
    static EnergyValue infinite(RieszExponent p,
                                EnergySource src = EnergySource::direct_sum) {
        if (p.is_negative())
            throw std::invalid_argument(
                "EnergyValue: +infinity is not permitted when p < 0");
        return EnergyValue(0.0, false, p, src);
    }

    bool is_finite() const { return finite_; }
    double value() const {
        if (!finite_)
            throw std::logic_error("EnergyValue: value() called on +infinity");
        return value_;
    }
    RieszExponent exponent() const { return exponent_; }
    EnergySource source() const { return source_; }

  private:
    EnergyValue(double v, bool fin, RieszExponent p, EnergySource src)
        : value_(v), finite_(fin), exponent_(p), source_(src) {}

    double value_;
    bool finite_;
    RieszExponent exponent_;
    EnergySource source_;
};

// r^-p for p != 0, log(1/r) for p = 0. Requires r > 0; r = 0 is a
// diagonal/singularity case that callers must handle themselves.
double kernel_value(const RieszExponent& p, double r);

// Eq. (capacity from energy): V^(-1/p) for p != 0, exp(-V) for p = 0.
// Honors the conventions V = +infinity -> 0 (p >= 0) and V = 0 -> 0 (p < 0).
double capacity_from_energy(const RieszExponent& p, const EnergyValue& v);

}  // namespace rieszcap

#endif
