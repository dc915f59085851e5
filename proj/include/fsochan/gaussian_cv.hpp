#pragma once

#include "fsochan/fading_stats.hpp"

#include <Eigen/Dense>

// Two-mode Gaussian states in shot-noise units (vacuum variance 1), quadrature
// ordering (x1, p1, x2, p2).

namespace fsochan {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

struct CovMat2 {
    Mat2 A = Mat2::Identity();  // mode 1
    Mat2 B = Mat2::Identity();  // mode 2
    Mat2 C = Mat2::Zero();      // <r1 r2^T>

    Mat4 full() const;
    static CovMat2 from_full(const Mat4& gamma);
};

enum class Mode { first = 1, second = 2 };
enum class Quadrature { x, p };

struct SymplecticSpectrum {
    double nu_max;
    double nu_min;
};

/// Two-mode squeezed vacuum with local variance V.
CovMat2 tmsv(double V);

/// V such that log_negativity(tmsv(V)) equals ln0 (in ebits).
double tmsv_variance_for_log_negativity(double ln0);

/// Fading channel acting on mode 2 with input-referred excess noise epsilon.
/// Throws NumericalError if the output violates the uncertainty principle.
CovMat2 apply_fading_channel(const CovMat2& cm, const FadingStats& stats, double epsilon);

SymplecticSpectrum symplectic_eigs(const CovMat2& cm);

bool is_physical(const CovMat2& cm, double tol = 1e-9);

/// max{0, -log2 nu~}, nu~ the smaller symplectic eigenvalue after partial transpose.
double log_negativity(const CovMat2& cm);

/// Entropy in bits of a thermal mode with symplectic eigenvalue nu.
double entropy_g(double nu);

double von_neumann_entropy(const CovMat2& cm);
double von_neumann_entropy(const Mat2& single_mode);

/// Covariance of the unmeasured mode after homodyning one quadrature of
/// measured_mode.
Mat2 condition_on_homodyne(const CovMat2& cm, Mode measured_mode, Quadrature quadrature);

/// Covariance of the unmeasured mode after heterodyning measured_mode.
Mat2 condition_on_heterodyne(const CovMat2& cm, Mode measured_mode);

}  // namespace fsochan
