#include "ppvi/linear_ode.hpp"

#include <cmath>
#include <vector>

namespace ppvi {

namespace {

void check_regular(double q, double x) {
    if (x == 0.0 || x == 1.0) throw SingularCollision();
    double tol = 1e-13 * std::max({1.0, std::abs(q), std::abs(x)});
    if (std::abs(q) < tol || std::abs(q - 1.0) < tol || std::abs(q - x) < tol)
        throw SingularCollision();
}

// Right-hand sides of the three linear equations.
std::array<double, 3> system_rhs(double p, double q, double x, const Kappa& k) {
    double sk = k.k1 + k.k2 + k.k3;
    double r1 = p;
    double r2 = p * q + 0.25 * (k.k4 * k.k4 - 1.0) - 0.25 * sk * sk + 0.5 * sk;
    double r3 = p * p - p * ((k.k1 - 1.0) / q + (k.k2 - 1.0) / (q - 1.0) +
                             (k.k3 - 1.0) / (q - x));
    return {r1, r2, r3};
}

}  // namespace

std::array<double, 3> accessory_from_pq(double p, double q, double x, const Kappa& k) {
    check_regular(q, x);
    auto r = system_rhs(p, q, x, k);
    // Rows: [1 1 1; 0 1 x; 1/q 1/(q-1) 1/(q-x)], 3x3 Gaussian elimination
    // with partial pivoting.
    double m[3][4] = {{1, 1, 1, r[0]},
                      {0, 1, x, r[1]},
                      {1.0 / q, 1.0 / (q - 1.0), 1.0 / (q - x), r[2]}};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
        if (piv != col)
            for (int j = 0; j < 4; ++j) std::swap(m[piv][j], m[col][j]);
        if (std::abs(m[col][col]) == 0.0) throw SingularCollision();
        for (int row = 0; row < 3; ++row) {
            if (row == col) continue;
            double f = m[row][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

std::array<double, 3> accessory_residuals(double p, double q, double x, const Kappa& k,
                                          const std::array<double, 3>& h) {
    auto r = system_rhs(p, q, x, k);
    double e1 = h[0] + h[1] + h[2] - r[0];
    double e2 = h[1] + x * h[2] - r[1];
    double e3 = h[0] / q + h[1] / (q - 1.0) + h[2] / (q - x) - r[2];
    return {e1, e2, e3};
}

double hamiltonian(double p, double q, double x, const Kappa& k) {
    if (x == 0.0 || x == 1.0) throw SingularCollision();
    double k0 = k.k0();
    double val = q * (q - 1.0) * (q - x) * p * p -
                 ((k.k3 - 1.0) * q * (q - 1.0) + k.k1 * (q - 1.0) * (q - x) +
                  k.k2 * q * (q - x)) * p +
                 k0 * (k0 + k.k4) * (q - x);
    return val / (x * (x - 1.0));
}

double dh_dp(double p, double q, double x, const Kappa& k) {
    double val = 2.0 * q * (q - 1.0) * (q - x) * p -
                 ((k.k3 - 1.0) * q * (q - 1.0) + k.k1 * (q - 1.0) * (q - x) +
                  k.k2 * q * (q - x));
    return val / (x * (x - 1.0));
}

double dh_dq(double p, double q, double x, const Kappa& k) {
    double dA = 3.0 * q * q - 2.0 * (1.0 + x) * q + x;
    double dB = (k.k3 - 1.0) * (2.0 * q - 1.0) + k.k1 * (2.0 * q - 1.0 - x) +
                k.k2 * (2.0 * q - x);
    double k0 = k.k0();
    return (dA * p * p - dB * p + k0 * (k0 + k.k4)) / (x * (x - 1.0));
}

double log_obstruction(double p, double q, double x, const Kappa& k,
                       const std::array<double, 3>& h, int order) {
    check_regular(q, x);
    // Series data at z = q for w'' = P w' - Q w with
    // P = 1/u + sum_m P_m u^m, Q = p/u + sum_m Q_m u^m, u = z - q.
    double t[3] = {0.0, 1.0, x};
    int n_max = std::max(order, 3);
    std::vector<double> P(n_max + 1, 0.0), Q(n_max + 1, 0.0);
    for (int m = 0; m <= n_max; ++m) {
        double pm = 0.0, qm = 0.0, sgn = (m % 2 == 0) ? 1.0 : -1.0;
        double ks[3] = {k.k1, k.k2, k.k3};
        for (int j = 0; j < 3; ++j) {
            double d = q - t[j];
            double pw = sgn / std::pow(d, m + 1);
            pm += (ks[j] - 1.0) * pw;
            qm += -h[j] * pw;
        }
        P[m] = pm;
        Q[m] = qm;
    }
    // Frobenius series with exponent 0: c_n n (n - 2) = RHS_n, resonance at 2.
    std::vector<double> c(n_max + 1, 0.0);
    c[0] = 1.0;
    double obstruction = 0.0, scale = std::max(1.0, std::abs(p));
    for (int n = 1; n <= 2; ++n) {
        double rhs = -p * c[n - 1];
        for (int m = 0; m <= n - 1; ++m) rhs += P[m] * (n - 1.0 - m) * c[n - 1 - m];
        for (int m = 0; m <= n - 2; ++m) rhs -= Q[m] * c[n - 2 - m];
        double lhs = static_cast<double>(n) * (n - 2.0);
        if (n == 2) {
            obstruction = rhs;
            scale = std::max({scale, std::abs(P[0] * c[1]), std::abs(p * c[1]),
                              std::abs(Q[0])});
        } else {
            c[n] = rhs / lhs;
            scale = std::max(scale, std::abs(c[n]));
        }
    }
    return obstruction / scale;
}

bool apparent_singularity_check(double p, double q, double x, const Kappa& k,
                                const std::array<double, 3>& h, double tol) {
    return std::abs(log_obstruction(p, q, x, k, h)) < tol;
}

}  // namespace ppvi
