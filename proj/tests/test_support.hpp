#pragma once

#include <cstdlib>
#include <random>

#include "ppvi/moebius.hpp"

namespace ppvi::testing {

inline unsigned long rng_seed() {
    if (const char* s = std::getenv("PENTAGON_PVI_SEED")) return std::strtoul(s, nullptr, 10);
    return 20240817ul;
}

inline std::mt19937_64 make_rng(unsigned long salt = 0) {
    return std::mt19937_64(rng_seed() + salt);
}

inline cx random_point(std::mt19937_64& rng, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return cx(u(rng), u(rng));
}

inline Reflection random_circle(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> r(0.3, 2.5);
    return Reflection::from_circle(cx(u(rng), u(rng)), r(rng));
}

inline Reflection random_great_circle(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double nx = g(rng), ny = g(rng), nz = g(rng);
    while (nx * nx + ny * ny + nz * nz < 1e-6) {
        nx = g(rng); ny = g(rng); nz = g(rng);
    }
    return Reflection::from_great_circle(nx, ny, nz);
}

// Four circles with consecutive pairs crossing transversally (chain
// conditions), rejection-sampled away from tangency.
inline std::array<Reflection, 4> random_chain(std::mt19937_64& rng,
                                              double margin = 0.05) {
    for (;;) {
        std::array<Reflection, 4> c = {random_circle(rng), random_circle(rng),
                                       random_circle(rng), random_circle(rng)};
        bool ok = true;
        for (int j = 0; j < 4 && ok; ++j) {
            const Reflection& r1 = c[j];
            const Reflection& r2 = c[(j + 1) % 4];
            if (same_circle(r1, r2, 1e-6)) ok = false;
            double tr = trace_of_reflection_product(r1, r2);
            if (std::abs(tr) > 2.0 - margin) ok = false;  // crossing, not tangent
        }
        if (ok) return c;
    }
}

inline std::array<Reflection, 4> random_great_chain(std::mt19937_64& rng,
                                                    double margin = 0.05) {
    for (;;) {
        std::array<Reflection, 4> c = {
            random_great_circle(rng), random_great_circle(rng),
            random_great_circle(rng), random_great_circle(rng)};
        bool ok = true;
        for (int j = 0; j < 4 && ok; ++j) {
            if (same_circle(c[j], c[(j + 1) % 4], 1e-6)) ok = false;
            double tr = trace_of_reflection_product(c[j], c[(j + 1) % 4]);
            if (std::abs(tr) > 2.0 - margin) ok = false;
        }
        if (ok) return c;
    }
}

inline Moebius random_unimodular(std::mt19937_64& rng) {
    Moebius m(random_point(rng), random_point(rng), random_point(rng),
              random_point(rng));
    while (std::abs(m.det()) < 0.1) {
        m = Moebius(random_point(rng), random_point(rng), random_point(rng),
                    random_point(rng));
    }
    m.normalize_det();
    return m;
}

}  // namespace ppvi::testing
