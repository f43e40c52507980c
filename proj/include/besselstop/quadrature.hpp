#pragma once

#include <functional>

namespace besselstop {

/// Adaptive Gauss-Kronrod (15/31) on [a, b]. Throws NumericError when the
/// error estimate exceeds rel_tol * |I| (with a small absolute floor).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

/// Tanh-sinh on [a, b], for integrands with algebraic endpoint behaviour
/// such as s^e g(s). Same error contract as integrate.
double integrate_endpoint(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12);

/// int_0^c exp(t^2/2) dt.
double exp_half_square_integral(double c, double rel_tol = 1e-13);

}  // namespace besselstop
