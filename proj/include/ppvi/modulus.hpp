#pragma once

#include "ppvi/moebius.hpp"

namespace ppvi {

// Conformal modulus of the quadrilateral (0, 1, x, infinity): the extremal
// distance in the upper half-plane between the boundary segments [0,1] and
// [x, infinity]. Strictly increasing from 0 to infinity as x runs over
// (1, infinity); a(2) = 1 by symmetry.
double modulus_of_x(double x);

// Inverse by bracketed root finding.
double x_from_modulus(double a);

// Discrete extremal length estimate on an n-by-n grid over the disk image of
// the quadrilateral (resistor network). Returns the estimate and, if
// requested, the dual estimate (conjugate side pair) for the duality check.
struct ExtremalLengthEstimate {
    double lambda = 0;       // estimate of mod
    double lambda_dual = 0;  // estimate of 1/mod
};
ExtremalLengthEstimate extremal_length_oracle(double x, int grid_n);

}  // namespace ppvi
