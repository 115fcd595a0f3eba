#include "ppvi/hyper_counts.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ppvi/ode_rk.hpp"

namespace ppvi {

namespace {
constexpr double kSnap = 1e-9;

double snap(double x) {
    double r = std::round(x);
    return std::abs(x - r) < kSnap ? r : x;
}
}  // namespace

long snapped_floor(double x) { return static_cast<long>(std::floor(snap(x))); }

long klein_E(double x) {
    double s = snap(x);
    if (s <= 0.0) return 0;
    return static_cast<long>(std::floor(s));
}

long erganzung_full_turns(double l1, double l2, double l3) {
    return klein_E(0.5 * (l1 - l2 - l3 + 1.0));
}

long vanvleck_zero_count_F(double l1, double l2, double l3) {
    if (!(l1 > 0.0 && l1 < 1.0))
        throw Unsupported("vanvleck_zero_count_F needs lambda1 in (0,1)");
    long b2 = snapped_floor(l2), b3 = snapped_floor(l3);
    if (b2 > b3) return 0;
    long e = klein_E(0.5 * (l1 + l3 - l2 + 1.0));
    if (b3 > b2) return e;
    return e % 2 == 0 ? 0 : 1;
}

long zero_count_F1(double l1, double l2, double l3) {
    if (!(l1 > 0.0 && l1 < 1.0))
        throw Unsupported("zero_count_F1 needs lambda1 in (0,1)");
    return klein_E(0.5 * (l3 - l1 - l2 + 1.0)) + 1;
}

long crossing_count(double l1, double l2, double l3) {
    return vanvleck_zero_count_F(l1, l2, l3) + zero_count_F1(l1, l2, l3);
}

bool gluing_possible(const Kappa& k, double t) {
    if (!(t > 0.0 && t < 1.0)) throw Unsupported("t must lie in (0,1)");
    if (k.k2 >= k.k3 && k.k1 >= k.k4) return true;
    bool e1 = klein_E(0.5 * (k.k3 - k.k2 + t + 1.0)) ==
              klein_E(0.5 * (k.k4 - k.k1 - t + 2.0));
    bool e2 = klein_E(0.5 * (k.k3 - k.k2 - t + 1.0)) ==
              klein_E(0.5 * (k.k4 - k.k1 + t));
    return e1 && e2;
}

bool gluing_possible_ab(double a, double b, double u) {
    if (a <= 0.5 && b <= 0.5) return true;
    bool e1 = klein_E(0.5 * (a + 1.0 + u)) == klein_E(0.5 * (b + 1.0 - u));
    bool e2 = klein_E(0.5 * (a - u)) == klein_E(0.5 * (b + u));
    return e1 && e2;
}

double classifier_a(const Kappa& k) { return k.k3 - k.k2 + 0.5; }
double classifier_b(const Kappa& k) { return k.k4 - k.k1 + 0.5; }

NoSpecialPointVerdict no_special_point_classifier(const Kappa& k) {
    NoSpecialPointVerdict v;
    double a = classifier_a(k), b = classifier_b(k);
    v.interval_family = std::abs(a - b) < 1.0 || std::max(a, b) < 1.5;
    v.isolated_b = k.k3 + k.k1 <= k.k2 + k.k4 + 1.0 + kSnap;
    v.isolated_c = k.k4 + k.k2 <= k.k1 + k.k3 + 1.0 + kSnap;
    return v;
}

bool gluing_possible_for_some_t(const Kappa& k, double grid) {
    // Breakpoints of the four floor arguments as functions of t, plus a
    // uniform grid; exact ties are then hit exactly.
    std::set<double> ts;
    for (double t = grid; t < 1.0; t += grid) ts.insert(t);
    double d32 = k.k3 - k.k2, d41 = k.k4 - k.k1;
    for (int n = -12; n <= 12; ++n) {
        double cands[4] = {2.0 * n - d32 - 1.0, d41 + 2.0 - 2.0 * n,
                           d32 + 1.0 - 2.0 * n, 2.0 * n - d41};
        for (double t : cands) {
            if (t > 1e-12 && t < 1.0 - 1e-12) {
                ts.insert(t);
                if (t > grid) ts.insert(t - 0.5 * grid);
                if (t + 0.5 * grid < 1.0) ts.insert(t + 0.5 * grid);
            }
        }
    }
    for (double t : ts)
        if (gluing_possible(k, t)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Numeric oracles.

namespace {

struct HyperParams {
    double alpha, beta, gamma;
};

// Series for F(alpha,beta,gamma;z) and its derivative near z = 0.
void hyper_series(const HyperParams& p, double z, double& f, double& fp) {
    double c = 1.0, zn = 1.0;  // c_n and z^n
    double sum = 1.0, dsum = 0.0;
    for (int n = 0; n < 300; ++n) {
        double c1 = c * (p.alpha + n) * (p.beta + n) / ((p.gamma + n) * (n + 1.0));
        dsum += c1 * (n + 1.0) * zn;
        zn *= z;
        c = c1;
        double t = c * zn;
        sum += t;
        if (n > 3 && std::abs(t) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    f = sum;
    fp = dsum;
}

// Hypergeometric ODE as a first-order system for (w, w').
struct HyperOde {
    HyperParams p;
    void operator()(double z, const std::vector<double>& y,
                    std::vector<double>& dy) const {
        dy[0] = y[1];
        dy[1] = ((p.gamma - (p.alpha + p.beta + 1.0) * z) * y[1] - p.alpha * p.beta * y[0]) /
                (z * (z - 1.0));
    }
};

// Integrates (w, w') from z0 to z1 accumulating the Pruefer phase of
// (w, s*w'); returns the phase increment and final values. Zeros of w are
// exactly the upward crossings of multiples of pi.
struct PhaseRun {
    double w = 0, wp = 0, phase = 0;
};

PhaseRun phase_integrate(const HyperParams& p, double z0, double z1, double w0,
                         double wp0) {
    HyperOde ode{p};
    RkOptions ro;
    ro.rtol = 1e-11;
    // The state is renormalized to unit scale after every step, so a small
    // absolute floor is meaningful even though the true solution spans
    // decades.
    ro.atol = 1e-14;
    ro.h_init = 1e-5;
    RkStepper st([&ode](double z, const std::vector<double>& y,
                        std::vector<double>& dy) { ode(z, y, dy); },
                 ro);
    {
        double m = std::max(std::abs(w0), std::abs(wp0));
        if (m > 0) { w0 /= m; wp0 /= m; }
    }
    st.init(z0, {w0, wp0});
    double dir = z1 > z0 ? 1.0 : -1.0;
    PhaseRun run;
    run.w = w0;
    run.wp = wp0;
    double prev_angle = std::atan2(w0, wp0);
    double phase = 0.0;
    while (dir * (z1 - st.x()) > 1e-15) {
        st.set_h_max(std::abs(z1 - st.x()));
        if (!st.step(dir)) throw Unsupported("phase integration stalled");
        const DenseStep& ds = st.last_step();
        double xa = ds.x0, xb = ds.x0 + ds.h;
        if (dir * (xb - z1) > 0) xb = z1;
        const int nsub = 24;
        for (int i = 1; i <= nsub; ++i) {
            double xx = xa + (xb - xa) * i / nsub;
            double w = ds.eval(0, xx), wp = ds.deriv(0, xx);
            double ang = std::atan2(w, wp);
            double d = ang - prev_angle;
            while (d > M_PI / 2) d -= M_PI;
            while (d < -M_PI / 2) d += M_PI;
            phase += d;
            prev_angle = ang;
        }
        if (dir * (st.x() - z1) >= 0) {
            run.w = ds.eval(0, z1);
            run.wp = ds.deriv(0, z1);
            break;
        }
        std::vector<double> y = st.y();
        double m = std::max(std::abs(y[0]), std::abs(y[1]));
        if (m > 1.0 || (m > 0.0 && m < 1e-3)) {
            y[0] /= m;
            y[1] /= m;
            st.init(st.x(), y);
        }
        run.w = y[0];
        run.wp = y[1];
    }
    run.phase = phase;
    return run;
}

// Count zeros of the solution with initial data (w0, w0') at z0=eps over
// (eps, 1-eps), plus the analytic tail correction on (1-eps, 1).
long count_zeros_open(const HyperParams& p, double w_eps, double wp_eps,
                      double eps, double eps1) {
    // The Pruefer angle of (w, w') crosses multiples of pi exactly at zeros,
    // always upward, so floor differences count them.
    double a0 = std::atan2(w_eps, wp_eps);
    PhaseRun run = phase_integrate(p, eps, 1.0 - eps1, w_eps, wp_eps);
    double a1 = a0 + run.phase;
    long interior = static_cast<long>(std::floor(a1 / M_PI)) -
                    static_cast<long>(std::floor(a0 / M_PI));
    // Tail: w = A + B s^mu + O(s^{mu+1}), s = 1-z, mu = gamma-alpha-beta.
    // For mu < 0 the B part dominates as z -> 1; one extra zero hides in the
    // truncated tail exactly when the sign at 1-eps1 differs from the limit.
    double mu = p.gamma - p.alpha - p.beta;
    double s = eps1;
    double B = -run.wp * std::pow(s, 1.0 - mu) / mu;
    double A = run.w - B * std::pow(s, mu);
    double limit_sign;
    if (mu < 0.0)
        limit_sign = (B != 0.0 ? B : A) >= 0 ? 1.0 : -1.0;
    else
        limit_sign = (A != 0.0 ? A : B) >= 0 ? 1.0 : -1.0;
    double here_sign = run.w >= 0 ? 1.0 : -1.0;
    if (here_sign != limit_sign) ++interior;
    return interior;
}

HyperParams params_from_lambda(double l1, double l2, double l3) {
    HyperParams p;
    p.gamma = 1.0 - l1;
    p.alpha = 0.5 * (l2 + l3 + 1.0 - l1);
    p.beta = 0.5 * (l2 - l3 + 1.0 - l1);
    return p;
}

}  // namespace

HypergeometricZeroCounts hypergeometric_zero_oracle(double alpha, double beta,
                                                    double gamma) {
    double l1 = 1.0 - gamma;
    HypergeometricZeroCounts out;
    const double eps = 1e-5, eps1 = 1e-6;
    // F branch.
    HyperParams pf{alpha, beta, gamma};
    double f, fp;
    hyper_series(pf, eps, f, fp);
    out.f_open = count_zeros_open(pf, f, fp, eps, eps1);
    // F1 = z^{1-gamma} F(alpha-gamma+1, beta-gamma+1, 2-gamma; z).
    HyperParams pg{alpha - gamma + 1.0, beta - gamma + 1.0, 2.0 - gamma};
    double g, gp;
    hyper_series(pg, eps, g, gp);
    double zl = std::pow(eps, l1);
    double w = zl * g;
    double wp = l1 * zl / eps * g + zl * gp;
    out.f1_open = count_zeros_open(pf, w, wp, eps, eps1);
    return out;
}

HypergeometricZeroCounts hypergeometric_zero_oracle_lambda(double l1, double l2,
                                                           double l3) {
    HyperParams p = params_from_lambda(l1, l2, l3);
    return hypergeometric_zero_oracle(p.alpha, p.beta, p.gamma);
}

long erganzung_winding_oracle(double l1, double l2, double l3) {
    // Relabel so the side opposite lambda1 becomes (0,1): angles at
    // (0, 1, inf) are (lambda2, lambda3, lambda1).
    HyperParams p = params_from_lambda(l2, l3, l1);
    const double eps = 1e-5, eps1 = 1e-6;
    // Basis adapted to z = 0: y1 analytic (phase limit 0 at 0+), y2 singular.
    double y1, y1p;
    hyper_series(p, eps, y1, y1p);
    HyperParams p2{p.alpha - p.gamma + 1.0, p.beta - p.gamma + 1.0, 2.0 - p.gamma};
    double g, gp;
    hyper_series(p2, eps, g, gp);
    double zl = std::pow(eps, l2);  // exponent 1-gamma = lambda2
    double y2 = zl * g;
    double y2p = l2 * zl / eps * g + zl * gp;

    // Evolve the pair and accumulate the projective phase of [y1 : y2].
    HyperOde ode{p};
    RkOptions ro;
    ro.rtol = 1e-11;
    ro.atol = 1e-14;
    ro.h_init = 1e-5;
    std::vector<double> y = {y1, y1p, y2, y2p};
    {
        double m = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(y[2]),
                             std::abs(y[3])});
        if (m > 0) for (auto& v : y) v /= m;
    }
    auto rhs4 = [&ode](double z, const std::vector<double>& v,
                       std::vector<double>& dv) {
        std::vector<double> a = {v[0], v[1]}, da(2), b = {v[2], v[3]}, db(2);
        ode(z, a, da);
        ode(z, b, db);
        dv = {da[0], da[1], db[0], db[1]};
    };
    RkStepper st(rhs4, ro);
    st.init(eps, y);
    double z1 = 1.0 - eps1;
    // Phase starts exactly at 0 in the adapted basis: y2/y1 -> 0+ as z->0+.
    double prev = std::atan2(y[2], y[0]);
    double phase = prev;  // equals the sweep from the corner (monotone, small)
    while (st.x() < z1 - 1e-15) {
        st.set_h_max(z1 - st.x());
        if (!st.step(1.0)) throw Unsupported("winding oracle stalled");
        const DenseStep& ds = st.last_step();
        double xa = ds.x0, xb = std::min(ds.x0 + ds.h, z1);
        for (int i = 1; i <= 8; ++i) {
            double xx = xa + (xb - xa) * i / 8;
            double ang = std::atan2(ds.eval(2, xx), ds.eval(0, xx));
            double d = ang - prev;
            while (d > M_PI / 2) d -= M_PI;
            while (d < -M_PI / 2) d += M_PI;
            phase += d;
            prev = ang;
        }
        std::vector<double> cur = st.y();
        double m = std::max({std::abs(cur[0]), std::abs(cur[1]), std::abs(cur[2]),
                             std::abs(cur[3])});
        if (m > 1.0 || (m > 0.0 && m < 1e-3)) {
            for (auto& v : cur) v /= m;
            st.init(st.x(), cur);
        }
        if (st.x() >= z1 - 1e-15) {
            y = {ds.eval(0, z1), ds.deriv(0, z1), ds.eval(2, z1), ds.deriv(2, z1)};
        } else {
            y = st.y();
        }
    }
    // Limit direction at z -> 1: y_i = A_i + B_i s^mu, mu = gamma-alpha-beta.
    double mu = p.gamma - p.alpha - p.beta;
    double s = eps1;
    double B1 = -y[1] * std::pow(s, 1.0 - mu) / mu;
    double A1 = y[0] - B1 * std::pow(s, mu);
    double B2 = -y[3] * std::pow(s, 1.0 - mu) / mu;
    double A2 = y[2] - B2 * std::pow(s, mu);
    double dx, dy;
    if (mu < 0.0) { dx = B1; dy = B2; }
    else { dx = A1; dy = A2; }
    double ang_lim = std::atan2(dy, dx);
    double d = ang_lim - prev;
    while (d > M_PI / 2) d -= M_PI;
    while (d < -M_PI / 2) d += M_PI;
    phase += d;
    // Turns: passes of the projective point through its start [1:0]; the
    // endpoint counts when the limit lands exactly on a multiple of pi.
    double ratio = phase / M_PI;
    long turns = static_cast<long>(std::floor(snap(ratio) + 1e-12));
    return turns;
}

bool near_count_boundary(double l1, double l2, double l3, double margin) {
    auto near_int = [&](double v) {
        return std::abs(v - std::round(v)) < margin;
    };
    return near_int(l2) || near_int(l3) ||
           near_int(0.5 * (l1 + l3 - l2 + 1.0)) ||
           near_int(0.5 * (l3 - l1 - l2 + 1.0)) ||
           near_int(0.5 * (l1 - l2 - l3 + 1.0)) || near_int(l1);
}

}  // namespace ppvi
