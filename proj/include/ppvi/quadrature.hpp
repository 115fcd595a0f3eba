#pragma once

#include <functional>
#include <vector>

namespace ppvi {

struct QuadRule {
    std::vector<double> nodes;    // on (0,1)
    std::vector<double> weights;  // for the weight t^beta (1-t)^alpha
};

// Gauss--Jacobi rule for integrals of the form
//   int_0^1 t^beta (1-t)^alpha g(t) dt,  alpha, beta > -1,
// exact for polynomial g up to degree 2n-1 (Golub--Welsch).
QuadRule gauss_jacobi01(int n, double alpha, double beta);

// Same with alpha = beta = -1/2 in closed form (Chebyshev nodes).
QuadRule chebyshev01(int n);

// tanh-sinh rule applied to int_0^1 f(t) dt; tolerates integrable endpoint
// singularities. Doubles the level until |change| < tol or max_level.
double tanh_sinh01(const std::function<double(double)>& f, double tol = 1e-12,
                   int max_level = 12);

}  // namespace ppvi
