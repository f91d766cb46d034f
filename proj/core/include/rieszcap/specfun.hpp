#ifndef RIESZCAP_SPECFUN_HPP
#define RIESZCAP_SPECFUN_HPP

// Gamma-family special functions used by the closed-form capacity formulas.
// Self-contained: Lanczos approximation for log-gamma, upward recurrence plus
// asymptotic series for digamma. Target accuracy ~1e-13 relative on [1e-3, 1e3],
// which is well below every tolerance used elsewhere in the library.

namespace rieszcap::specfun {

// Value plus a flag recording whether the argument was inside the valid domain.
// The throwing entry points below are what most callers want; the checked
// variants exist for code that probes domains (e.g. regime scans).
struct SpecialValue {
    double value;
    bool domain_ok;
};

SpecialValue log_gamma_checked(double x) noexcept;
SpecialValue digamma_checked(double x) noexcept;
SpecialValue beta_checked(double a, double b) noexcept;

// log Gamma(x), x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

// psi(x) = (log Gamma)'(x), x > 0. Throws std::domain_error otherwise.
double digamma(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b), a,b > 0.
double beta(double a, double b);

// log B(a,b); avoids overflow for large arguments.
double log_beta(double a, double b);

}  // namespace rieszcap::specfun

#endif
