#include "ppvi/ode_rk.hpp"

#include <algorithm>
#include <cmath>

namespace ppvi {

namespace {
// Dormand--Prince 5(4) tableau.
const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
const double a21 = 1.0 / 5;
const double a31 = 3.0 / 40, a32 = 9.0 / 40;
const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
             a54 = -212.0 / 729;
const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
             a64 = 49.0 / 176, a65 = -5103.0 / 18656;
const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
             b5 = -2187.0 / 6784, b6 = 11.0 / 84;
const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
             e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
const double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
             d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
             d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace

double DenseStep::eval(int comp, double x) const {
    double th = (x - x0) / h;
    double th1 = 1.0 - th;
    return r1[comp] +
           th * (r2[comp] + th1 * (r3[comp] + th * (r4[comp] + th1 * r5[comp])));
}

double DenseStep::deriv(int comp, double x) const {
    double th = (x - x0) / h;
    // u = r1 + r2 th + r3 th(1-th) + r4 th^2(1-th) + r5 th^2(1-th)^2.
    double dth = r2[comp] + r3[comp] * (1.0 - 2.0 * th) +
                 r4[comp] * th * (2.0 - 3.0 * th) +
                 r5[comp] * 2.0 * th * (1.0 - th) * (1.0 - 2.0 * th);
    return dth / h;
}

std::vector<double> DenseStep::eval_all(double x) const {
    std::vector<double> out(r1.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = eval(static_cast<int>(i), x);
    return out;
}

RkStepper::RkStepper(OdeRhs rhs, RkOptions opt) : rhs_(std::move(rhs)), opt_(opt) {}

void RkStepper::init(double x0, std::vector<double> y0) {
    x_ = x0;
    y_ = std::move(y0);
    h_ = opt_.h_init;
    k1_.assign(y_.size(), 0.0);
    have_k1_ = false;
}

bool RkStepper::step(double direction) {
    const size_t n = y_.size();
    std::vector<double> k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y5(n);
    if (!have_k1_) {
        rhs_(x_, y_, k1_);
        have_k1_ = true;
    }
    double dir = direction >= 0 ? 1.0 : -1.0;
    long iters = 0;
    for (;;) {
        if (++iters > 200) return false;
        double h = dir * std::abs(h_);
        if (opt_.h_max > 0.0) h = dir * std::min(std::abs(h), opt_.h_max);
        if (std::abs(h) < opt_.h_min) return false;
        for (size_t i = 0; i < n; ++i) ytmp[i] = y_[i] + h * a21 * k1_[i];
        rhs_(x_ + c2 * h, ytmp, k2);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
        rhs_(x_ + c3 * h, ytmp, k3);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
        rhs_(x_ + c4 * h, ytmp, k4);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y_[i] +
                      h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs_(x_ + c5 * h, ytmp, k5);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] +
                                   a64 * k4[i] + a65 * k5[i]);
        rhs_(x_ + h, ytmp, k6);
        for (size_t i = 0; i < n; ++i)
            y5[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3[i] + b4 * k4[i] +
                                 b5 * k5[i] + b6 * k6[i]);
        rhs_(x_ + h, y5, k7);
        double err = 0.0;
        bool finite = true;
        for (size_t i = 0; i < n; ++i) {
            double est = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                              e6 * k6[i] + e7 * k7[i]);
            double sk = opt_.atol +
                        opt_.rtol * std::max(std::abs(y_[i]), std::abs(y5[i]));
            if (!std::isfinite(y5[i]) || !std::isfinite(est)) finite = false;
            err += (est / sk) * (est / sk);
        }
        err = std::sqrt(err / n);
        if (!finite) err = 1e10;
        if (err <= 1.0) {
            dense_.x0 = x_;
            dense_.h = h;
            dense_.r1 = y_;
            dense_.r2.resize(n);
            dense_.r3.resize(n);
            dense_.r4.resize(n);
            dense_.r5.resize(n);
            for (size_t i = 0; i < n; ++i) {
                double ydiff = y5[i] - y_[i];
                double bspl = h * k1_[i] - ydiff;
                dense_.r2[i] = ydiff;
                dense_.r3[i] = bspl;
                dense_.r4[i] = ydiff - h * k7[i] - bspl;
                dense_.r5[i] = h * (d1 * k1_[i] + d3 * k3[i] + d4 * k4[i] +
                                    d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            x_ += h;
            y_ = y5;
            k1_ = k7;  // FSAL
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            fac = std::clamp(fac, 0.2, 5.0);
            h_ = std::abs(h) * fac;
            return true;
        }
        double fac = 0.9 * std::pow(err, -0.2);
        fac = std::clamp(fac, 0.1, 0.9);
        h_ = std::abs(h) * fac;
    }
}

}  // namespace ppvi
