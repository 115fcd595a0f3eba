#include "doctest.h"
#include "ppvi/linear_ode.hpp"
#include "test_support.hpp"

using namespace ppvi;
namespace tst = ppvi::testing;

namespace {

// Independent 3x3 solve by Cramer's rule: the implementation uses Gaussian
// elimination, so this is a separate route to the same system.
std::array<double, 3> cramer_oracle(double p, double q, double x, const Kappa& k) {
    double sk = k.k1 + k.k2 + k.k3;
    double r1 = p;
    double r2 = p * q + 0.25 * (k.k4 * k.k4 - 1.0) - 0.25 * sk * sk + 0.5 * sk;
    double r3 = p * p - p * ((k.k1 - 1.0) / q + (k.k2 - 1.0) / (q - 1.0) +
                             (k.k3 - 1.0) / (q - x));
    double A[3][3] = {{1, 1, 1},
                      {0, 1, x},
                      {1.0 / q, 1.0 / (q - 1.0), 1.0 / (q - x)}};
    double r[3] = {r1, r2, r3};
    auto det3 = [](double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    double d = det3(A);
    std::array<double, 3> h{};
    for (int col = 0; col < 3; ++col) {
        double M[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M[i][j] = (j == col) ? r[i] : A[i][j];
        h[col] = det3(M) / d;
    }
    return h;
}

Kappa random_kappa(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.6);
    return Kappa{u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("accessory parameters satisfy the linear system") {
    auto rng = tst::make_rng(20);
    std::uniform_real_distribution<double> ux(1.2, 6.0);
    std::uniform_real_distribution<double> uq(-2.0, 2.0);
    std::uniform_real_distribution<double> up(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng), q = uq(rng), p = up(rng);
        if (std::abs(q) < 0.05 || std::abs(q - 1.0) < 0.05 || std::abs(q - x) < 0.05)
            continue;
        Kappa k = random_kappa(rng);
        auto h = accessory_from_pq(p, q, x, k);
        auto res = accessory_residuals(p, q, x, k, h);
        double scale = std::max({1.0, std::abs(h[0]), std::abs(h[1]), std::abs(h[2])});
        CHECK(std::abs(res[0]) / scale < 1e-10);
        CHECK(std::abs(res[1]) / scale < 1e-10);
        CHECK(std::abs(res[2]) / scale < 1e-10);
        auto ho = cramer_oracle(p, q, x, k);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(h[j] - ho[j]) / scale < 1e-9);
    }
}

TEST_CASE("zero right-hand side gives h = 0") {
    Kappa k{1.0, 1.0, 1.0, 2.0};
    auto h = accessory_from_pq(0.0, 0.4, 2.0, k);
    CHECK(std::abs(h[0]) < 1e-12);
    CHECK(std::abs(h[1]) < 1e-12);
    CHECK(std::abs(h[2]) < 1e-12);
}

TEST_CASE("collision with a singular point raises") {
    Kappa k{0.5, 0.5, 0.5, 0.5};
    CHECK_THROWS_AS((void)accessory_from_pq(1.0, 2.0, 2.0, k), SingularCollision);
    CHECK_THROWS_AS((void)accessory_from_pq(1.0, 0.0, 2.0, k), SingularCollision);
}

TEST_CASE("Hamiltonian equals h3 from the linear system") {
    auto rng = tst::make_rng(21);
    std::uniform_real_distribution<double> ux(1.2, 5.0);
    std::uniform_real_distribution<double> uq(-1.5, 2.5);
    std::uniform_real_distribution<double> up(-2.0, 2.0);
    for (int i = 0; i < 200; ++i) {
        double x = ux(rng), q = uq(rng), p = up(rng);
        if (std::abs(q) < 0.05 || std::abs(q - 1.0) < 0.05 || std::abs(q - x) < 0.05)
            continue;
        Kappa k = random_kappa(rng);
        auto h = accessory_from_pq(p, q, x, k);
        double hv = hamiltonian(p, q, x, k);
        CHECK(std::abs(hv - h[2]) < 1e-9 * std::max(1.0, std::abs(hv)));
    }
}

TEST_CASE("Hamiltonian vanishes when p = 0 and kappas sum to one") {
    Kappa k{0.25, 0.25, 0.25, 0.25};
    CHECK(std::abs(k.k0()) < 1e-15);
    CHECK(std::abs(hamiltonian(0.0, 0.37, 2.1, k)) < 1e-15);
    // Smooth across q in (1, x): plain polynomial evaluation.
    for (double q = 1.05; q < 2.0; q += 0.1)
        CHECK(std::isfinite(hamiltonian(0.3, q, 2.1, k)));
}

TEST_CASE("h_j are quadratic polynomials in p") {
    Kappa k{0.3, 0.7, 0.4, 0.9};
    double q = 0.6, x = 3.0;
    // Fit through 4 samples; the cubic coefficient must vanish.
    double ps[4] = {-1.0, 0.0, 1.0, 2.0};
    for (int comp = 0; comp < 3; ++comp) {
        double v[4];
        for (int i = 0; i < 4; ++i) v[i] = accessory_from_pq(ps[i], q, x, k)[comp];
        // Third finite difference of equally spaced samples = 6 * cubic coeff.
        double d3 = v[3] - 3.0 * v[2] + 3.0 * v[1] - v[0];
        CHECK(std::abs(d3) < 1e-9);
    }
}

TEST_CASE("apparent singularity check accepts the system solution and rejects perturbations") {
    auto rng = tst::make_rng(22);
    std::uniform_real_distribution<double> ux(1.3, 4.0);
    std::uniform_real_distribution<double> uq(0.1, 0.9);
    std::uniform_real_distribution<double> up(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        double x = ux(rng), q = uq(rng), p = up(rng);
        Kappa k = random_kappa(rng);
        auto h = accessory_from_pq(p, q, x, k);
        CHECK(apparent_singularity_check(p, q, x, k, h));
        auto bad = h;
        bad[2] += 1e-3;
        CHECK_FALSE(apparent_singularity_check(p, q, x, k, bad));
    }
    // Logarithmic corners (kappa = 0) do not disturb the check.
    Kappa klog{0.0, 0.5, 0.5, 0.5};
    auto h = accessory_from_pq(0.7, 0.4, 2.0, klog);
    CHECK(apparent_singularity_check(0.7, 0.4, 2.0, klog, h));
}
