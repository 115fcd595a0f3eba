#pragma once

#include <array>
#include <optional>

#include "ppvi/moebius.hpp"

namespace ppvi {

struct NotReflectionGenerated : std::runtime_error {
    NotReflectionGenerated() : std::runtime_error("Delta > 0: not generated by reflections") {}
};
struct NormalizationUnavailable : std::runtime_error {
    NormalizationUnavailable() : std::runtime_error("|t2| >= 2: anchor generator not elliptic") {}
};

// Quadruple of unimodular matrices with T1 T2 T3 T4 = +-id. Construction
// rescales each matrix to det 1 and flips the sign of T4 when the product
// is -id, so the stored product is +id.
struct MonodromyQuadruple {
    std::array<Moebius, 4> t;

    MonodromyQuadruple() = default;
    explicit MonodromyQuadruple(std::array<Moebius, 4> gens);

    double product_residual() const;  // distance of T1 T2 T3 T4 from id
    bool satisfies_invariants(double tol = 1e-9) const;

    static MonodromyQuadruple from_reflections(const std::array<Reflection, 4>& s);
};

struct TraceCoordinates {
    cx t1{}, t2{}, t3{}, t4{}, t12{}, t23{}, t13{};

    bool six_real(double tol = 1e-9) const;
    bool all_real(double tol = 1e-9) const;
};

TraceCoordinates trace_coordinates(const MonodromyQuadruple& q);

// Left side of the Fricke--Klein relation minus 4; vanishes on trace
// coordinates of any product-identity quadruple.
cx fricke_klein_residual(const TraceCoordinates& tc);

// The reflection criterion polynomial; <= 0 iff the representation is
// generated by reflections (for real t1..t4, t12, t23). Also equals the
// discriminant of the Fricke--Klein relation as a quadratic in t13.
double reflection_delta(const TraceCoordinates& tc);

// Candidate circle quadruples from the trace data, anchored at T2 (which
// must be elliptic: |t2| < 2). Up to four candidates; callers filter with
// verify_generation.
std::vector<std::array<Reflection, 4>> recover_reflections(const TraceCoordinates& tc);

// True iff sigma_j sigma_{j+1} realizes T_j projectively for all j after one
// global conjugation aligning normalizations.
bool verify_generation(const std::array<Reflection, 4>& sigma,
                       const MonodromyQuadruple& q, double tol = 1e-7);

// Cyclic-anchor wrapper: tries anchors T2, T3, T4, T1 and returns the
// verified candidates (with circles unshifted to the original labels)
// together with the anchor shift used. Empty result means no anchor had an
// elliptic generator or no candidate verified.
struct RecoveryResult {
    std::vector<std::array<Reflection, 4>> verified;
    int anchor_shift = 0;
    bool normalization_available = false;
};
RecoveryResult recover_and_verify(const MonodromyQuadruple& q);

// conj(N_j) = N_j^{-1} for N1 = T1, N2 = T1 T2, N3 = T1 T2 T3.
bool reality_condition(const MonodromyQuadruple& q, double tol = 1e-8);

// Unitary case: Delta = 0 and 2 t13 + t12 t23 - t1 t3 - t2 t4 = 0.
bool unitary_reflection_test(const TraceCoordinates& tc, double tol = 1e-8);

// Shared fixed point of T1, T2 with multipliers e^{2 pi i k1}, e^{2 pi i k2}.
bool common_fixed_point_condition(const MonodromyQuadruple& q, double kappa1,
                                  double kappa2, double tol = 1e-7);

}  // namespace ppvi
