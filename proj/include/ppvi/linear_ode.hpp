#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace ppvi {

struct SingularCollision : std::runtime_error {
    SingularCollision() : std::runtime_error("q collides with 0, 1 or x") {}
};

struct Kappa {
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
    double k0() const { return 0.5 * (1.0 - k1 - k2 - k3 - k4); }
};

// Solves the 3x3 linear system fixing the residues h1, h2, h3 of the
// Fuchsian equation with singular points 0, 1, x, q, infinity, apparent at q.
std::array<double, 3> accessory_from_pq(double p, double q, double x, const Kappa& k);

// Residuals of the three defining equations for given h (diagnostic).
std::array<double, 3> accessory_residuals(double p, double q, double x, const Kappa& k,
                                          const std::array<double, 3>& h);

// x(x-1) h = q(q-1)(q-x) p^2 - {(k3-1)q(q-1) + k1(q-1)(q-x) + k2 q(q-x)} p
//            + k0(k0+k4)(q-x)
double hamiltonian(double p, double q, double x, const Kappa& k);
double dh_dp(double p, double q, double x, const Kappa& k);
double dh_dq(double p, double q, double x, const Kappa& k);

// Frobenius check that z = q is an apparent singularity (exponents 0 and 2,
// no logarithm): returns the normalized obstruction at the resonant index.
double log_obstruction(double p, double q, double x, const Kappa& k,
                       const std::array<double, 3>& h, int order = 12);

bool apparent_singularity_check(double p, double q, double x, const Kappa& k,
                                const std::array<double, 3>& h, double tol = 1e-8);

}  // namespace ppvi
