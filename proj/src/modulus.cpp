#include "ppvi/modulus.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <vector>

#include "ppvi/quadrature.hpp"

namespace ppvi {

namespace {

// a(x) = I_mid / I_low, the ratio of the two real periods of
// dz / sqrt(z(z-1)(z-x)). Both reduce to Chebyshev-weighted integrals.
double period_ratio(double x, int n) {
    QuadRule r = chebyshev01(n);
    double i_low = 0.0, i_mid = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = r.nodes[i];
        i_low += r.weights[i] / std::sqrt(x - t);
        i_mid += r.weights[i] / std::sqrt(1.0 + (x - 1.0) * t);
    }
    return i_mid / i_low;
}

double modulus_direct(double x) {
    double prev = 0.0;
    for (int n = 48; n <= 6144; n *= 2) {
        double cur = period_ratio(x, n);
        if (n > 48 && std::abs(cur - prev) < 1e-11 * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double modulus_of_x(double x) {
    if (!(x > 1.0)) throw DomainError("modulus_of_x requires x > 1");
    // The conjugate quadrilateral swaps the side pairs: a(x) a(x/(x-1)) = 1.
    // Evaluating on x >= 2 keeps the algebraic singularity away from the
    // integration interval.
    if (x < 2.0) return 1.0 / modulus_direct(x / (x - 1.0));
    return modulus_direct(x);
}

double x_from_modulus(double a) {
    if (!(a > 0.0)) throw DomainError("modulus must be positive");
    if (a < 1.0) {
        double xd = x_from_modulus(1.0 / a);
        return xd / (xd - 1.0);
    }
    double lo = 2.0, hi = 2.0;
    if (modulus_of_x(lo) > a) {
        // a(2) = 1 <= a, so only rounding can land here; fall through with a
        // slightly wider bracket.
        lo = 1.5;
    }
    while (modulus_of_x(hi) < a) {
        hi = hi * hi;
        if (hi > 1e300) throw DomainError("modulus out of range");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (modulus_of_x(mid) < a)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Effective resistance between the two electrode arcs of the unit disk cut
// by a square grid of unit conductances.
double grid_resistance(int n, double beta, bool rotate) {
    // Cell (i,j) center.
    auto cx_of = [&](int i) { return -1.0 + (2.0 * i + 1.0) / n; };
    std::vector<int> id(n * n, -1);
    std::vector<int> kind(n * n, 0);  // 0 interior, 1 electrode A, 2 electrode C
    int count = 0;
    auto inside = [&](int i, int j) {
        double x = cx_of(i), y = cx_of(j);
        return x * x + y * y < 1.0;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (inside(i, j)) id[i * n + j] = count++;
    // Boundary cells: those with a 4-neighbour outside the disk. Classify by
    // angle. Electrodes: |theta| <= beta (A) and |theta - pi| <= beta (C);
    // the rotated variant measures the conjugate family.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (id[i * n + j] < 0) continue;
            bool bd = i == 0 || j == 0 || i == n - 1 || j == n - 1 ||
                      !inside(i - 1, j) || !inside(i + 1, j) || !inside(i, j - 1) ||
                      !inside(i, j + 1);
            if (!bd) continue;
            double th = std::atan2(cx_of(j), cx_of(i));
            if (rotate) th -= M_PI / 2;
            double d0 = std::abs(std::remainder(th, 2.0 * M_PI));
            double dpi = std::abs(std::remainder(th - M_PI, 2.0 * M_PI));
            if (d0 <= beta)
                kind[i * n + j] = 1;
            else if (dpi <= beta)
                kind[i * n + j] = 2;
        }
    }
    // Unknowns: non-electrode cells.
    std::vector<int> unknown(n * n, -1);
    int m = 0;
    for (int i = 0; i < n * n; ++i)
        if (id[i] >= 0 && kind[i] == 0) unknown[i] = m++;
    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    std::vector<double> diag(m, 0.0);
    auto visit = [&](int a, int bi, int bj) {
        if (bi < 0 || bj < 0 || bi >= n || bj >= n) return;
        int b = bi * n + bj;
        if (id[b] < 0) return;
        int ua = unknown[a];
        diag[ua] += 1.0;
        if (kind[b] == 0)
            trips.emplace_back(ua, unknown[b], -1.0);
        else if (kind[b] == 1)
            rhs[ua] += 1.0;  // potential 1  (electrode A)
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int a = i * n + j;
            if (id[a] < 0 || kind[a] != 0) continue;
            visit(a, i - 1, j);
            visit(a, i + 1, j);
            visit(a, i, j - 1);
            visit(a, i, j + 1);
        }
    for (int i = 0; i < m; ++i) trips.emplace_back(i, i, diag[i]);
    Eigen::SparseMatrix<double> L(m, m);
    L.setFromTriplets(trips.begin(), trips.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper>
        cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(20000);
    cg.compute(L);
    Eigen::VectorXd u = cg.solve(rhs);
    // Energy of the extended potential (1 on A, 0 on C).
    auto pot = [&](int i, int j) -> double {
        int a = i * n + j;
        if (id[a] < 0) return -1.0;  // marker: outside
        if (kind[a] == 1) return 1.0;
        if (kind[a] == 2) return 0.0;
        return u[unknown[a]];
    };
    double energy = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (id[i * n + j] < 0) continue;
            double p0 = pot(i, j);
            if (i + 1 < n && id[(i + 1) * n + j] >= 0) {
                double p1 = pot(i + 1, j);
                energy += (p1 - p0) * (p1 - p0);
            }
            if (j + 1 < n && id[i * n + j + 1] >= 0) {
                double p1 = pot(i, j + 1);
                energy += (p1 - p0) * (p1 - p0);
            }
        }
    return 1.0 / energy;
}

}  // namespace

ExtremalLengthEstimate extremal_length_oracle(double x, int grid_n) {
    if (!(x > 1.0)) throw DomainError("x must exceed 1");
    if (grid_n < 16) throw DomainError("grid too coarse");
    double beta = std::acos(std::sqrt((x - 1.0) / x));
    ExtremalLengthEstimate est;
    est.lambda = grid_resistance(grid_n, beta, false);
    est.lambda_dual = grid_resistance(grid_n, M_PI / 2 - beta, true);
    return est;
}

}  // namespace ppvi
