#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ppvi/linear_ode.hpp"

namespace ppvi {

enum class Chart { Standard, Inverted };
enum class Symbol { Zero, One, X, Infinity };

char symbol_char(Symbol s);  // '0', '1', 'x', 'i'
std::string symbol_name(Symbol s);

struct PviState {
    double x = 2.0;
    double y = 0.5;  // q in the standard chart, u = 1/q in the inverted one
    double p = 0.0;
    Chart chart = Chart::Standard;

    double q() const { return chart == Chart::Standard ? y : 1.0 / y; }
    static PviState standard(double x, double q, double p) {
        return PviState{x, q, p, Chart::Standard};
    }
};

struct SpecialPointEvent {
    double x0 = 0;
    Symbol symbol = Symbol::Zero;
    bool critical = false;
    double slope = 0;  // d/dx of (q - target) at the event (0 when critical)
};

struct Trajectory {
    std::vector<PviState> samples;
    std::vector<SpecialPointEvent> events;
    Kappa kappa;
    bool truncated = false;      // stopped before reaching x_end
    std::string diagnostic;      // empty when clean
};

// Second-order PVI right-hand side q_xx(x, q, q_x).
double pvi_rhs(double x, double q, double qx, const Kappa& k);

// Momentum from (q, q_x) by inverting dq/dx = dh/dp (linear in p).
double p_from_qx(double x, double q, double qx, const Kappa& k);
double qx_from_p(double x, double q, double p, const Kappa& k);

struct IntegrateOptions {
    double rtol = 3e-12;
    double atol = 1e-13;
    double event_x_tol = 1e-10;
    double restart_dx = 1e-6;
    double pole_switch = 10.0;   // |q| above this switches to the inverted chart
    double chart_back = 8.0;     // |q| below this switches back
    double sample_dx = 0.0;      // 0: record accepted steps only
    long max_steps = 400000;
};

Trajectory integrate(const Kappa& k, const PviState& initial, double x_end,
                     const IntegrateOptions& opt = {});

std::vector<Symbol> special_point_sequence(const Trajectory& t);

// Hypergeometric-integral solution for reducible monodromy. alpha are the
// three finite corner angles (in (0,1), summing below 1); k is the
// normalization ratio f(infinity)/f(1).
struct ReducibleSolution {
    double alpha1, alpha2, alpha3;
    std::complex<double> k;

    Kappa kappa() const;
    double q(double x, int nodes = 96) const;         // throws on non-real
    std::complex<double> q_complex(double x, int nodes = 96) const;
};

// Choose k so that q(x0) = q0.
ReducibleSolution reducible_from_seed(double a1, double a2, double a3, double q0,
                                      double x0);

// The four basic contour integrals (I1(1), I1(inf), I2(1), I2(inf)).
struct ReducibleIntegrals {
    std::complex<double> i1_1, i1_inf, i2_1, i2_inf;
};
ReducibleIntegrals reducible_integrals(double a1, double a2, double a3, double x,
                                       int nodes = 96);
// Oracle variant evaluated with tanh-sinh quadrature instead of Gauss--Jacobi.
ReducibleIntegrals reducible_integrals_ts(double a1, double a2, double a3, double x,
                                          double tol = 1e-11);

}  // namespace ppvi
