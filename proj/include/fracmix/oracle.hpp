// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

// Brute-force quadrature oracles. They share no code with the assembly path
// (only Boost.Math) so they can pin it down independently.

#pragma once

#include <array>
#include <functional>
#include <vector>

namespace fracmix::oracle {

double normalization_constant(int dim, double s);

/// Stiffness entries on a 1D mesh with sorted nodes x_0 = -R < ... < x_M = R
/// (containing -r and r), by nested tanh-sinh quadrature of
///   C/2 int_{Om} int_{Om} D K + C int_{Om} int_{annulus} D K + C int_{Om} phi_i phi_j w_R,
/// w_R the closed-form tail outside (-R, R). Returns the matrix over hat
/// functions 1..M-1 (row-major, size (M-1)^2).
std::vector<double> stiffness_1d(const std::vector<double>& nodes, double r, double s);

/// (-Delta)^s of (1 - y^2)_+^s at |x| < 1, principal value computed from the
/// symmetric second difference with exact splitting at the kinks.
double fractional_laplacian_getoor_1d(double x, double s);

/// int_{|y| > r} g(|y|) P(x, y) dy in 2D by a polar tensor quadrature
/// (adaptive Gauss-Kronrod in angle, tanh-sinh / exp-sinh in radius).
double poisson_integral_2d(const std::array<double, 2>& x, double r, double s,
                           const std::function<double(double)>& g);
/// Same in 1D (two half-lines).
double poisson_integral_1d(double x, double r, double s, const std::function<double(double)>& g);

/// (C(1, s)/2) |v|^2_{H^s(R)} for the P1 function with the given nodal values
/// (zero at the first and last node), computed on the Fourier side:
///   (1/pi) int_0^inf xi^{2s-4} |sum_k c_k e^{-i xi x_k}|^2 d xi,
/// c_k the slope jumps.
double seminorm_fourier_1d(const std::vector<double>& nodes, const std::vector<double>& values, double s);

}  // namespace fracmix::oracle
