// Test-only oracles: independent hyperboloid-model embeddings used to verify
// the closed-form kernels, plus small sampling helpers. These deliberately
// avoid the library's trigonometric code paths.
#pragma once

#include <array>
#include <random>
#include <utility>
#include <vector>

#include "fcm/geom.hpp"
#include "fcm/hyptrig.hpp"
#include "fcm/surface.hpp"

namespace oracles {

using fcm::geom::Vec3;
using fcm::geom::Vec4;

/// Trapezoid embedded in R^{1,2} over the lower line {y = 0}.
struct TrapezoidEmbedding {
    Vec3 A1, A2, B1, B2;
    double a12 = 0;  // measured lower length
    double alpha12 = 0, alpha21 = 0;
    bool ultraparallel = false;
    double hperp = 0;
};

TrapezoidEmbedding embed_trapezoid(double l12, double h1, double h2);

/// Prism embedded in R^{1,3} over the lower plane {z = 0}; dihedral angles
/// are measured from face normals, not from spherical links.
struct PrismEmbedding {
    Vec4 A[3], B[3];
    double om[3];                // lateral dihedrals at A_iB_i
    double phi12 = 0, phi13 = 0, phi23 = 0;
    double lowerDihedral[3];     // should be pi/2
    double upperLen12 = 0, upperLen13 = 0, upperLen23 = 0;  // recomputed
};

PrismEmbedding embed_prism(double l12, double l13, double l23, double h1, double h2,
                           double h3);

/// Monte-Carlo prism volume in the Klein ball (rejection sampling with the
/// Klein volume element). Returns (estimate, standard error).
std::pair<double, double> klein_mc_volume(double l12, double l13, double l23, double h1,
                                          double h2, double h3, int samples,
                                          std::mt19937& rng);

/// Independent area of a trapezoid by numeric quadrature of sinh H(t) along
/// the lower edge.
double trapezoid_area_quadrature(const fcm::TrapezoidSolved& t, int n = 20000);

/// Random trapezoid input (l, h1, h2) admitting a trapezoid.
std::array<double, 3> sample_trapezoid_input(std::mt19937& rng);

/// Random prism input (l12, l13, l23, h1, h2, h3) with a valid upper triangle
/// and representable heights.
std::array<double, 6> sample_prism_input(std::mt19937& rng);

template <class F>
double central_diff(const F& f, double x, double eps) {
    return (f(x + eps) - f(x - eps)) / (2.0 * eps);
}

}  // namespace oracles
