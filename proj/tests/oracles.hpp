#pragma once

// Independent reference computations used only by the tests. None of these
// call the library routine they are meant to check.

#include "fsochan/gaussian_cv.hpp"

#include <array>
#include <random>
#include <span>

namespace oracle {

// Power fraction of a Gaussian beam (spot radius W, centre offset r) inside the
// unit disc, by composite Gauss-Legendre over the disc in polar coordinates.
double beam_fraction_2d(double r, double a_over_W);

// Symplectic eigenvalues as |eigenvalues| of Omega * gamma (descending).
std::array<double, 2> symplectic_eigs_matrix(const fsochan::Mat4& gamma);

// Log-negativity from the matrix spectrum of the partial transpose.
double log_negativity_matrix(const fsochan::CovMat2& cm);

// Entropy from the matrix spectrum, with its own copy of the thermal-entropy formula.
double entropy_matrix(const fsochan::Mat4& gamma);
double entropy_single_mode(const fsochan::Mat2& gamma);

// Homodyne conditioning as the infinitely squeezed general-dyne limit
// A - C (B + diag(d, 1/d))^-1 C^T with d -> 0 (mode 2 measured in x).
fsochan::Mat2 homodyne_x_limit(const fsochan::CovMat2& cm);

// Random physical two-mode state S diag(n1, n1, n2, n2) S^T with S a product
// of random passive and squeezing symplectic maps.
fsochan::CovMat2 random_physical_state(std::mt19937_64& rng);

struct SampleMean {
    double mean;
    double standard_error;
};

SampleMean sample_mean(std::span<const double> values);

}  // namespace oracle
