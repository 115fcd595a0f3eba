#include "ppvi/pvi.hpp"

#include <algorithm>
#include <cmath>

#include "ppvi/ode_rk.hpp"
#include "ppvi/quadrature.hpp"

namespace ppvi {

char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::Zero: return '0';
        case Symbol::One: return '1';
        case Symbol::X: return 'x';
        case Symbol::Infinity: return 'i';
    }
    return '?';
}

std::string symbol_name(Symbol s) {
    return s == Symbol::Infinity ? "inf" : std::string(1, symbol_char(s));
}

double pvi_rhs(double x, double q, double qx, const Kappa& k) {
    if (x == 0.0 || x == 1.0) throw DomainError("x at a fixed singularity");
    if (q == 0.0 || q == 1.0 || q == x) throw DomainError("q at a singular value");
    double t1 = 0.5 * (1.0 / q + 1.0 / (q - 1.0) + 1.0 / (q - x)) * qx * qx;
    double t2 = (1.0 / x + 1.0 / (x - 1.0) + 1.0 / (q - x)) * qx;
    double brace = k.k4 * k.k4 - k.k1 * k.k1 * x / (q * q) +
                   k.k2 * k.k2 * (x - 1.0) / ((q - 1.0) * (q - 1.0)) +
                   (1.0 - k.k3 * k.k3) * x * (x - 1.0) / ((q - x) * (q - x));
    double t3 = q * (q - 1.0) * (q - x) / (2.0 * x * x * (x - 1.0) * (x - 1.0)) * brace;
    return t1 - t2 + t3;
}

double qx_from_p(double x, double q, double p, const Kappa& k) {
    return dh_dp(p, q, x, k);
}

double p_from_qx(double x, double q, double qx, const Kappa& k) {
    double denom = 2.0 * q * (q - 1.0) * (q - x);
    double bterm = (k.k3 - 1.0) * q * (q - 1.0) + k.k1 * (q - 1.0) * (q - x) +
                   k.k2 * q * (q - x);
    return (x * (x - 1.0) * qx + bterm) / denom;
}

namespace {

// B(q,x)/q^2 expressed in u = 1/q; regular at u = 0.
double btilde(double u, double x, const Kappa& k) {
    return (k.k3 - 1.0) * (1.0 - u) + k.k1 * (1.0 - u) * (1.0 - x * u) +
           k.k2 * (1.0 - x * u);
}

struct ChartRhs {
    const Kappa* k;
    Chart chart;

    void operator()(double x, const std::vector<double>& y,
                    std::vector<double>& dy) const {
        if (chart == Chart::Standard) {
            double q = y[0], p = y[1];
            dy[0] = dh_dp(p, q, x, *k);
            dy[1] = -dh_dq(p, q, x, *k);
        } else {
            double u = y[0], p = y[1];
            double r = p / u;
            double xx = x * (x - 1.0);
            dy[0] = -(2.0 * r * (1.0 - u) * (1.0 - x * u) - btilde(u, x, *k)) / xx;
            double dA = 3.0 - 2.0 * (1.0 + x) * u + x * u * u;
            double K = k->k1 + k->k2 + k->k3 - 1.0;
            double L = (k->k3 - 1.0) + k->k1 * (1.0 + x) + k->k2 * x;
            double k0 = k->k0();
            dy[1] = -(dA * r * r - (2.0 * K - u * L) * r + k0 * (k0 + k->k4)) / xx;
        }
    }
};

struct Monitor {
    Symbol symbol;
    // g value in the active chart.
    double target_kappa;  // the kappa controlling the crossing slope
};

double monitor_value(Chart chart, Symbol s, double x, double y) {
    if (chart == Chart::Standard) {
        switch (s) {
            case Symbol::Zero: return y;
            case Symbol::One: return y - 1.0;
            case Symbol::X: return y - x;
            default: return 1.0;  // infinity not visible here
        }
    }
    switch (s) {
        case Symbol::Infinity: return y;
        case Symbol::X: return y - 1.0 / x;
        default: return 1.0;
    }
}

double monitor_target_deriv(Chart chart, Symbol s, double x) {
    if (chart == Chart::Standard) return s == Symbol::X ? 1.0 : 0.0;
    return s == Symbol::X ? -1.0 / (x * x) : 0.0;
}

double slope_magnitude(Chart chart, Symbol s, double x, const Kappa& k) {
    // |d/dx (coordinate - target)| at a non-critical crossing.
    switch (s) {
        case Symbol::Zero: return k.k1 / std::abs(x - 1.0);
        case Symbol::One: return k.k2 / std::abs(x);
        case Symbol::X:
            if (chart == Chart::Standard) return k.k3;
            return k.k3 / (x * x);  // |d/dx (u - 1/x)| = |q'-1|/q^2 at q = x
        case Symbol::Infinity: return k.k4 / std::abs(x * (x - 1.0));
    }
    return 0.0;
}

double kappa_of(Symbol s, const Kappa& k) {
    switch (s) {
        case Symbol::Zero: return k.k1;
        case Symbol::One: return k.k2;
        case Symbol::X: return k.k3;
        case Symbol::Infinity: return k.k4;
    }
    return 0.0;
}

std::vector<Symbol> active_monitors(Chart chart, double x, double pole_switch) {
    if (chart == Chart::Standard) {
        std::vector<Symbol> m = {Symbol::Zero, Symbol::One, Symbol::X};
        return m;
    }
    std::vector<Symbol> m = {Symbol::Infinity};
    if (x > pole_switch * 0.8) m.push_back(Symbol::X);
    return m;
}

}  // namespace

Trajectory integrate(const Kappa& k, const PviState& initial, double x_end,
                     const IntegrateOptions& opt) {
    Trajectory traj;
    traj.kappa = k;
    double dir = x_end >= initial.x ? 1.0 : -1.0;

    Chart chart = initial.chart;
    std::vector<double> y = {initial.y, initial.p};
    double x = initial.x;

    ChartRhs rhs{&k, chart};
    RkOptions ro;
    ro.rtol = opt.rtol;
    ro.atol = opt.atol;
    ro.h_init = 1e-5;
    RkStepper st([&rhs](double xx, const std::vector<double>& yy,
                        std::vector<double>& dd) { rhs(xx, yy, dd); },
                 ro);
    st.init(x, y);
    traj.samples.push_back({x, y[0], y[1], chart});

    auto record = [&](double xs, const std::vector<double>& ys) {
        traj.samples.push_back({xs, ys[0], ys[1], chart});
    };

    auto restart_after_event = [&](double x0, Symbol sym, double slope_signed,
                                   double curv, bool critical) {
        double delta = opt.restart_dx * dir;
        double xr = x0 + delta;
        double g, gx;
        if (critical) {
            g = 0.5 * curv * delta * delta;
            gx = curv * delta;
        } else {
            g = slope_signed * delta + 0.5 * curv * delta * delta;
            gx = slope_signed + curv * delta;
        }
        double target = 0.0;
        if (sym == Symbol::One) target = 1.0;
        if (sym == Symbol::X) target = chart == Chart::Standard ? xr : 1.0 / xr;
        double tgt_d = monitor_target_deriv(chart, sym, xr);
        double ynew = target + g;
        double ydot = tgt_d + gx;  // d/dx of the chart coordinate
        double pnew;
        if (chart == Chart::Standard) {
            pnew = p_from_qx(xr, ynew, ydot, k);
        } else {
            double xx = xr * (xr - 1.0);
            double r = (btilde(ynew, xr, k) - xx * ydot) /
                       (2.0 * (1.0 - ynew) * (1.0 - xr * ynew));
            pnew = r * ynew;
        }
        x = xr;
        y = {ynew, pnew};
        st.init(x, y);
        st.set_h(1e-7);
        record(x, y);
    };

    auto handle_event = [&](double x0, Symbol sym, double g_slope_num,
                            double curv, bool critical) {
        SpecialPointEvent ev;
        ev.x0 = x0;
        ev.symbol = sym;
        ev.critical = critical;
        double slope_signed = 0.0;
        if (!critical) {
            double mag = slope_magnitude(chart, sym, x0, k);
            // Project onto the exact local slope; keep the numeric sign.
            slope_signed = (g_slope_num >= 0 ? 1.0 : -1.0) *
                           (mag > 1e-12 ? mag : std::abs(g_slope_num));
            ev.slope = critical ? 0.0 : slope_signed;
        }
        traj.events.push_back(ev);
        restart_after_event(x0, sym, slope_signed, curv, critical);
    };

    // Extrapolated event when the momentum pole blocks integration up to the
    // crossing itself.
    auto try_extrapolated_event = [&]() -> bool {
        std::vector<double> dy(2);
        rhs(x, y, dy);
        for (Symbol s : active_monitors(chart, x, opt.pole_switch)) {
            double g = monitor_value(chart, s, x, y[0]);
            double gd = dy[0] - monitor_target_deriv(chart, s, x);
            if (std::abs(g) > 1e-3) continue;
            double kap = kappa_of(s, k);
            if (kap > 1e-9 && std::abs(gd) > 1e-7) {
                if (g * gd * dir >= 0.0) continue;  // moving away
                double x0 = x - g / gd;
                if ((x0 - x) * dir <= 0.0) continue;
                handle_event(x0, s, gd, 0.0, false);
                return true;
            }
            // Zero-kappa touch: vertex of the local parabola.
            double h2 = 1e-6;
            auto gv = [&](double xx, const std::vector<double>& yy) {
                return monitor_value(chart, s, xx, yy[0]);
            };
            (void)gv;
            double curv_est = 0.0;
            {
                // Estimate curvature from the ODE: g'' = y'' which we get by
                // a one-sided difference of the RHS.
                std::vector<double> y2 = y, d2(2);
                double step = -1e-7 * dir;
                y2[0] += dy[0] * step;
                y2[1] += dy[1] * step;
                rhs(x + step, y2, d2);
                curv_est = (dy[0] - d2[0]) / (-step);
                (void)h2;
            }
            if (std::abs(curv_est) < 1e-12) continue;
            double x0 = x - gd / curv_est;
            if ((x0 - x) * dir <= 0.0) continue;
            double gmin = g - gd * gd / (2.0 * curv_est);
            if (std::abs(gmin) > 1e-6) continue;
            handle_event(x0, s, 0.0, curv_est, true);
            return true;
        }
        return false;
    };

    long steps = 0;
    const double kApproachP = 3e6;
    while (dir * (x_end - x) > 0.0) {
        if (++steps > opt.max_steps) {
            traj.truncated = true;
            traj.diagnostic = "max steps exceeded";
            break;
        }
        double remaining = std::abs(x_end - x);
        // Keep steps short when a monitor is about to fire so stages never
        // straddle the singular locus badly.
        std::vector<double> dy(2);
        rhs(x, y, dy);
        double guard = remaining;
        for (Symbol s : active_monitors(chart, x, opt.pole_switch)) {
            double g = monitor_value(chart, s, x, y[0]);
            double gd = dy[0] - monitor_target_deriv(chart, s, x);
            if (std::abs(g) < 0.05 && std::abs(gd) > 1e-12 && g * gd * dir < 0.0)
                guard = std::min(guard, std::max(0.6 * std::abs(g / gd), 2e-7));
        }
        st.set_h_max(guard);
        double x_before = x;
        std::vector<double> y_before = y;
        bool ok = st.step(dir);
        if (!ok) {
            if (try_extrapolated_event()) continue;
            traj.truncated = true;
            traj.diagnostic = "step size underflow";
            break;
        }
        const DenseStep& ds = st.last_step();
        double xn = st.x();
        std::vector<double> yn = st.y();
        x = x_before;
        y = y_before;

        // Event scan over the dense output of the coordinate component.
        bool fired = false;
        for (Symbol s : active_monitors(chart, x, opt.pole_switch)) {
            auto gval = [&](double xx) {
                return monitor_value(chart, s, xx, ds.eval(0, xx));
            };
            double ga = monitor_value(chart, s, x, y[0]);
            double gb = monitor_value(chart, s, xn, yn[0]);
            double xa = x, xb = xn;
            bool crossing = ga != 0.0 && ga * gb < 0.0;
            if (!crossing) {
                // Tangential touch: scan for an interior near-zero minimum.
                double best = std::abs(ga), bx = xa;
                for (int i = 1; i < 16; ++i) {
                    double xx = x + (xn - x) * i / 16.0;
                    double v = std::abs(gval(xx));
                    if (v < best) { best = v; bx = xx; }
                }
                if (best < 1e-8 && std::abs(ga) > 1e-7 && std::abs(gb) > 1e-7) {
                    double h2 = std::abs(xn - x) / 8.0;
                    double gm = gval(bx);
                    double gp = gval(std::min(bx + h2, std::max(x, xn)));
                    double gq = gval(std::max(bx - h2, std::min(x, xn)));
                    double curv = (gp + gq - 2.0 * gm) / (h2 * h2);
                    handle_event(bx, s, 0.0, curv, true);
                    fired = true;
                }
                if (fired) break;
                continue;
            }
            // Bisection to tolerance, then one Newton polish.
            for (int it = 0; it < 80 && std::abs(xb - xa) > opt.event_x_tol; ++it) {
                double xm = 0.5 * (xa + xb);
                double gm = gval(xm);
                if (gm == 0.0) { xa = xb = xm; break; }
                if (gm * ga > 0.0) { xa = xm; ga = gm; }
                else { xb = xm; }
            }
            double x0 = 0.5 * (xa + xb);
            double gd = ds.deriv(0, x0) - monitor_target_deriv(chart, s, x0);
            if (std::abs(gd) > 1e-14) {
                double x1 = x0 - gval(x0) / gd;
                if ((x1 - x) * dir > 0 && (xn - x1) * dir > 0) x0 = x1;
            }
            double curv;
            {
                double h2 = std::max(std::abs(xn - x) / 8.0, 1e-9);
                double lo = std::max(std::min(x, xn), x0 - h2);
                double hi = std::min(std::max(x, xn), x0 + h2);
                curv = (gval(hi) + gval(lo) - 2.0 * gval(0.5 * (lo + hi))) /
                       (0.25 * (hi - lo) * (hi - lo));
            }
            bool critical = kappa_of(s, k) < 1e-9 || std::abs(gd) < 1e-9;
            handle_event(x0, s, gd, curv, critical);
            fired = true;
            break;
        }
        if (fired) continue;

        x = xn;
        y = yn;
        record(x, y);

        if (std::abs(y[1]) > kApproachP) {
            if (try_extrapolated_event()) continue;
            traj.truncated = true;
            traj.diagnostic = "momentum blow-up without detectable event";
            break;
        }

        // Chart switching with hysteresis.
        if (chart == Chart::Standard && std::abs(y[0]) > opt.pole_switch) {
            double q = y[0];
            chart = Chart::Inverted;
            rhs.chart = chart;
            y[0] = 1.0 / q;
            st.init(x, y);
            record(x, y);
        } else if (chart == Chart::Inverted && y[0] != 0.0 &&
                   std::abs(1.0 / y[0]) < opt.chart_back) {
            double u = y[0];
            chart = Chart::Standard;
            rhs.chart = chart;
            y[0] = 1.0 / u;
            st.init(x, y);
            record(x, y);
        }
    }
    std::sort(traj.events.begin(), traj.events.end(),
              [&](const SpecialPointEvent& a, const SpecialPointEvent& b) {
                  return dir > 0 ? a.x0 < b.x0 : a.x0 > b.x0;
              });
    return traj;
}

std::vector<Symbol> special_point_sequence(const Trajectory& t) {
    std::vector<SpecialPointEvent> ev = t.events;
    std::sort(ev.begin(), ev.end(),
              [](const SpecialPointEvent& a, const SpecialPointEvent& b) {
                  return a.x0 < b.x0;
              });
    std::vector<Symbol> out;
    for (const auto& e : ev) out.push_back(e.symbol);
    return out;
}

// ---------------------------------------------------------------------------
// Reducible monodromy closed form.

namespace {

using cd = std::complex<double>;

struct PiecePhases {
    cd ph01, ph1x, phx8;
};

PiecePhases phases(double a2, double a3) {
    // Branches approached from the upper half-plane: (zeta-1)^{a2-1} has
    // argument pi(a2-1) on (0,1); (zeta-x)^{a3-1} has argument pi(a3-1)
    // left of x.
    PiecePhases p;
    p.ph01 = std::polar(1.0, M_PI * ((a2 - 1.0) + (a3 - 1.0)));
    p.ph1x = std::polar(1.0, M_PI * (a3 - 1.0));
    p.phx8 = 1.0;
    return p;
}

void check_exponents(double a1, double a2, double a3) {
    if (!(a1 > 0.0 && a1 < 1.0 && a2 > 0.0 && a2 < 1.0 && a3 > 0.0 && a3 < 1.0))
        throw DomainError("reducible exponents must lie in (0,1)");
    if (!(a1 + a2 + a3 < 1.0))
        throw DomainError("reducible exponents must satisfy a1+a2+a3 < 1");
}

}  // namespace

ReducibleIntegrals reducible_integrals(double a1, double a2, double a3, double x,
                                       int nodes) {
    check_exponents(a1, a2, a3);
    if (!(x > 1.0)) throw DomainError("x must exceed 1");
    PiecePhases ph = phases(a2, a3);
    auto piece = [&](double e1, double e2, double e3) {
        // Pieces for exponent set (e1 at 0, e2 at 1, e3 at x); returns the
        // three real integrals (0,1), (1,x), (x,inf).
        QuadRule r01 = gauss_jacobi01(nodes, e2, e1);
        double v01 = 0.0;
        for (int i = 0; i < static_cast<int>(r01.nodes.size()); ++i) {
            double t = r01.nodes[i];
            v01 += r01.weights[i] * std::pow(x - t, e3);
        }
        QuadRule r1x = gauss_jacobi01(nodes, e3, e2);
        double v1x = 0.0;
        for (int i = 0; i < nodes; ++i) {
            double s = r1x.nodes[i];
            v1x += r1x.weights[i] * std::pow(1.0 + (x - 1.0) * s, e1);
        }
        v1x *= std::pow(x - 1.0, e2 + e3 + 1.0);
        double E = -e1 - e2 - e3 - 2.0;
        QuadRule rx8 = gauss_jacobi01(nodes, e3, E);
        double vx8 = 0.0;
        for (int i = 0; i < nodes; ++i) {
            double u = rx8.nodes[i];
            vx8 += rx8.weights[i] * std::pow(x - u, e2);
        }
        vx8 *= std::pow(x, e1 + e3 + 1.0);
        return std::array<double, 3>{v01, v1x, vx8};
    };
    auto p1 = piece(a1, a2 - 1.0, a3 - 1.0);
    auto p2 = piece(a1 - 1.0, a2 - 1.0, a3 - 1.0);
    ReducibleIntegrals out;
    out.i1_1 = ph.ph01 * p1[0];
    out.i1_inf = out.i1_1 + ph.ph1x * p1[1] + ph.phx8 * p1[2];
    out.i2_1 = ph.ph01 * p2[0];
    out.i2_inf = out.i2_1 + ph.ph1x * p2[1] + ph.phx8 * p2[2];
    return out;
}

ReducibleIntegrals reducible_integrals_ts(double a1, double a2, double a3, double x,
                                          double tol) {
    check_exponents(a1, a2, a3);
    PiecePhases ph = phases(a2, a3);
    auto piece = [&](double e1, double e2, double e3) {
        double v01 = tanh_sinh01(
            [&](double t) {
                return std::pow(t, e1) * std::pow(1.0 - t, e2) * std::pow(x - t, e3);
            },
            tol);
        double v1x = tanh_sinh01(
            [&](double s) {
                return std::pow(s, e2) * std::pow(1.0 - s, e3) *
                       std::pow(1.0 + (x - 1.0) * s, e1);
            },
            tol);
        v1x *= std::pow(x - 1.0, e2 + e3 + 1.0);
        double E = -e1 - e2 - e3 - 2.0;
        double vx8 = tanh_sinh01(
            [&](double u) {
                return std::pow(u, E) * std::pow(1.0 - u, e3) * std::pow(x - u, e2);
            },
            tol);
        vx8 *= std::pow(x, e1 + e3 + 1.0);
        return std::array<double, 3>{v01, v1x, vx8};
    };
    auto p1 = piece(a1, a2 - 1.0, a3 - 1.0);
    auto p2 = piece(a1 - 1.0, a2 - 1.0, a3 - 1.0);
    ReducibleIntegrals out;
    out.i1_1 = ph.ph01 * p1[0];
    out.i1_inf = out.i1_1 + ph.ph1x * p1[1] + ph.phx8 * p1[2];
    out.i2_1 = ph.ph01 * p2[0];
    out.i2_inf = out.i2_1 + ph.ph1x * p2[1] + ph.phx8 * p2[2];
    return out;
}

Kappa ReducibleSolution::kappa() const {
    Kappa k;
    k.k1 = alpha1;
    k.k2 = alpha2;
    k.k3 = alpha3;
    k.k4 = 1.0 - alpha1 - alpha2 - alpha3;
    return k;
}

std::complex<double> ReducibleSolution::q_complex(double x, int nodes) const {
    ReducibleIntegrals I = reducible_integrals(alpha1, alpha2, alpha3, x, nodes);
    return (k * I.i1_1 - I.i1_inf) / (k * I.i2_1 - I.i2_inf);
}

double ReducibleSolution::q(double x, int nodes) const {
    cd v = q_complex(x, nodes);
    if (std::abs(v.imag()) > 1e-6 * std::max(1.0, std::abs(v)))
        throw DomainError("reducible solution evaluated non-real");
    return v.real();
}

ReducibleSolution reducible_from_seed(double a1, double a2, double a3, double q0,
                                      double x0) {
    ReducibleIntegrals I = reducible_integrals(a1, a2, a3, x0);
    ReducibleSolution sol;
    sol.alpha1 = a1;
    sol.alpha2 = a2;
    sol.alpha3 = a3;
    sol.k = (I.i1_inf - q0 * I.i2_inf) / (I.i1_1 - q0 * I.i2_1);
    return sol;
}

}  // namespace ppvi
