#pragma once

#include <cstddef>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"

namespace casimir::quad {

/// Adaptive 15-point Gauss-Kronrod on [a, b]. Throws NumericError if the
/// error estimate does not reach rel_tol.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-9,
                 std::size_t max_depth = 15)
{
    double err = 0.0, l1 = 0.0;
    double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol, &err, &l1);
    if (l1 > 0.0 && err > 100.0 * rel_tol * l1)
        throw NumericError("quadrature did not converge to requested tolerance");
    return v;
}

} // namespace casimir::quad
