#pragma once

#include <stdexcept>

#include "ppvi/linear_ode.hpp"

namespace ppvi {

struct Unsupported : std::runtime_error {
    explicit Unsupported(const std::string& m) : std::runtime_error(m) {}
};

// Klein's integer part: floor(x) for x > 0, else 0. Arguments within 1e-9 of
// an integer are snapped first, so exactly-integral boundary values count as
// themselves.
long klein_E(double x);

// floor with the same snapping (used for the bracket comparisons).
long snapped_floor(double x);

// Full turns of the developing image of the triangle side opposite lambda1.
long erganzung_full_turns(double l1, double l2, double l3);

// Van Vleck count of zeros of F on [0,1] (closed; generic inputs have none
// at the endpoints). Requires lambda1 in (0,1).
long vanvleck_zero_count_F(double l1, double l2, double l3);

// Zeros of the companion solution F1 on [0,1]; always counts the forced zero
// at the origin, hence >= 1.
long zero_count_F1(double l1, double l2, double l3);

// Crossings between the side image and the opposite circle: sum of the two
// counts above.
long crossing_count(double l1, double l2, double l3);

// Gluing of the two sub-triangles of a slit triangle across the common side,
// as a function of the auxiliary angle t in (0,1).
bool gluing_possible(const Kappa& k, double t);
// Substituted form in a = k3-k2+1/2, b = k4-k1+1/2, u = t-1/2.
bool gluing_possible_ab(double a, double b, double u);

struct NoSpecialPointVerdict {
    bool interval_family = false;
    bool isolated_b = false;
    bool isolated_c = false;
};
NoSpecialPointVerdict no_special_point_classifier(const Kappa& k);

double classifier_a(const Kappa& k);
double classifier_b(const Kappa& k);

// Exhaustive t-sweep of gluing_possible: the 1e-3 grid plus every breakpoint
// of the floor arguments (so isolated tie solutions are found exactly).
bool gluing_possible_for_some_t(const Kappa& k, double grid = 1e-3);

// Numeric zero counts for the hypergeometric equation with the standard
// parameter choice l1 = 1-gamma, l2 = alpha+beta-gamma, l3 = alpha-beta.
// Counts are on the open interval (0,1); F1 additionally vanishes at 0, so
// its closed-interval count is open count + 1.
struct HypergeometricZeroCounts {
    long f_open = 0;
    long f1_open = 0;
};
HypergeometricZeroCounts hypergeometric_zero_oracle(double alpha, double beta,
                                                    double gamma);
HypergeometricZeroCounts hypergeometric_zero_oracle_lambda(double l1, double l2,
                                                           double l3);

// Winding oracle: integrates a real solution basis along the side opposite
// lambda1 and counts full turns of the projective phase.
long erganzung_winding_oracle(double l1, double l2, double l3);

// True when the triple sits within `margin` of a case change of the closed
// forms (these are excluded from oracle comparisons and logged).
bool near_count_boundary(double l1, double l2, double l3, double margin = 1e-6);

}  // namespace ppvi
