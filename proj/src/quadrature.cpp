#include "ppvi/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace ppvi {

QuadRule gauss_jacobi01(int n, double alpha, double beta) {
    if (n < 1 || alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("gauss_jacobi01: bad parameters");
    // Jacobi matrix of the monic orthogonal polynomials for the weight
    // (1-x)^alpha (1+x)^beta on [-1,1].
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    double ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        double ak;
        if (k == 0)
            ak = (beta - alpha) / (ab + 2.0);
        else
            ak = (beta * beta - alpha * alpha) / denom;
        J(k, k) = ak;
        if (k + 1 < n) {
            double bk;
            if (k == 0)
                bk = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                     ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
            else {
                double kk = k;
                bk = 4.0 * kk * (kk + alpha) * (kk + beta) * (kk + ab) /
                     ((2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) *
                      (2.0 * kk + ab - 1.0));
            }
            J(k, k + 1) = J(k + 1, k) = std::sqrt(bk);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                          std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = es.eigenvalues()(i);           // in [-1,1]
        double wi = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
        // Map to t in (0,1) with weight t^beta (1-t)^alpha:
        // x = 2t - 1, (1-x)^a (1+x)^b dx = 2^{a+b+1} (1-t)^a t^b dt.
        rule.nodes[i] = 0.5 * (xi + 1.0);
        rule.weights[i] = wi / std::exp((ab + 1.0) * std::log(2.0));
    }
    return rule;
}

QuadRule chebyshev01(int n) {
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double th = M_PI * (2.0 * i + 1.0) / (2.0 * n);
        rule.nodes[i] = 0.5 * (std::cos(th) + 1.0);
        rule.weights[i] = M_PI / n;
    }
    return rule;
}

double tanh_sinh01(const std::function<double(double)>& f, double tol, int max_level) {
    // x(t) = 1/2 + 1/2 tanh((pi/2) sinh t), symmetric weights.
    auto eval = [&](double t, double& x, double& w) {
        double u = 0.5 * M_PI * std::sinh(t);
        double ch = std::cosh(u);
        x = 0.5 * (1.0 + std::tanh(u));
        w = 0.25 * M_PI * std::cosh(t) / (ch * ch);
    };
    const double tmax = 4.5;
    double x, w;
    eval(0.0, x, w);
    double sum = f(x) * w;  // running sum of f(x(kh)) w(kh) on the current grid
    double h = 1.0;
    for (double t = h; t <= tmax; t += h) {
        eval(t, x, w);
        if (x > 0.0 && x < 1.0 && w > 0.0) sum += f(x) * w;
        eval(-t, x, w);
        if (x > 0.0 && x < 1.0 && w > 0.0) sum += f(x) * w;
    }
    double integral = h * sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            eval(t, x, w);
            if (x > 0.0 && x < 1.0 && w > 0.0) sum += f(x) * w;
            eval(-t, x, w);
            if (x > 0.0 && x < 1.0 && w > 0.0) sum += f(x) * w;
        }
        double next = h * sum;
        if (level >= 3 &&
            std::abs(next - integral) < tol * std::max(1.0, std::abs(next)))
            return next;
        integral = next;
    }
    return integral;
}

}  // namespace ppvi
