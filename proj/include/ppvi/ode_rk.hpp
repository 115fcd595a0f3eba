#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace ppvi {

// Dormand--Prince 5(4) with the standard quartic dense output.
// The right-hand side writes dy/dx into `dydx`.
using OdeRhs = std::function<void(double x, const std::vector<double>& y,
                                  std::vector<double>& dydx)>;

struct DenseStep {
    double x0 = 0, h = 0;
    // Interpolation data per component: u(theta) = r1 + theta*(r2 + (1-theta)*
    // (r3 + theta*(r4 + (1-theta)*r5))).
    std::vector<double> r1, r2, r3, r4, r5;

    double eval(int comp, double x) const;
    double deriv(int comp, double x) const;
    std::vector<double> eval_all(double x) const;
};

struct RkOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-14;
    double h_max = 0.0;  // 0 = no cap
    long max_steps = 200000;
};

struct RkStepper {
    explicit RkStepper(OdeRhs rhs, RkOptions opt = {});

    void init(double x0, std::vector<double> y0);
    // Advances one accepted step toward x_dir (sign of direction). Returns
    // false if the step size underflowed.
    bool step(double direction);

    double x() const { return x_; }
    const std::vector<double>& y() const { return y_; }
    const DenseStep& last_step() const { return dense_; }
    void set_h_max(double h) { opt_.h_max = h; }
    void set_h(double h) { h_ = h; }
    double h() const { return h_; }

  private:
    OdeRhs rhs_;
    RkOptions opt_;
    double x_ = 0;
    double h_ = 0;
    std::vector<double> y_, k1_;
    bool have_k1_ = false;
    DenseStep dense_;
};

}  // namespace ppvi
