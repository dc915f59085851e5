#include "fsochan/gaussian_cv.hpp"

#include "fsochan/errors.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fsochan {
namespace {

constexpr double kEigenSlack = 1e-9;
constexpr double kDiscriminantSlack = 1e-12;

struct Split {
    const Mat2& kept;
    const Mat2& measured;
    Mat2 corr;  // <r_kept r_measured^T>
};

Split split(const CovMat2& cm, Mode measured_mode) {
    if (measured_mode == Mode::second) return {cm.A, cm.B, cm.C};
    return {cm.B, cm.A, cm.C.transpose()};
}

struct Invariants {
    double delta;  // sum of squared symplectic eigenvalues
    double det;    // their product
    double disc;   // (nu_max^2 - nu_min^2)^2
};

// disc = delta^2 - 4 det is evaluated as (det A - det B)^2 + 4 det(A w C + C w B),
// which is invariant under local symplectic maps and vanishes identically for
// symmetric pure states instead of leaving O(|gamma|^2 eps) residue.
// det(gamma) via the Schur complement of A; the 4x4 expansion loses
// O(V^4 eps) to cancellation for strongly correlated states.
double full_determinant(const Mat2& A, const Mat2& B, const Mat2& C, const Mat4& full) {
    const double det_a = A.determinant();
    if (!(det_a > 0.0)) return full.determinant();
    const Mat2 schur = B - C.transpose() * A.inverse() * C;
    return det_a * schur.determinant();
}

Invariants invariants(const Mat2& A, const Mat2& B, const Mat2& C, const Mat4& full) {
    Mat2 w;
    w << 0.0, 1.0, -1.0, 0.0;
    const double det_a = A.determinant();
    const double det_b = B.determinant();
    const double mixed = (A * w * C + C * w * B).determinant();
    const double disc = (det_a - det_b) * (det_a - det_b) + 4.0 * mixed;
    const double scale = std::abs(det_a) + std::abs(det_b) + 2.0 * std::abs(C.determinant());
    if (disc < -kDiscriminantSlack * std::max(1.0, scale * scale)) {
        throw NumericalError("negative symplectic discriminant " + std::to_string(disc), disc);
    }
    return {det_a + det_b + 2.0 * C.determinant(), full_determinant(A, B, C, full),
            std::max(0.0, disc)};
}

SymplecticSpectrum spectrum(const Mat2& A, const Mat2& B, const Mat2& C, const Mat4& full) {
    const Invariants inv = invariants(A, B, C, full);
    const double big2 = 0.5 * (inv.delta + std::sqrt(inv.disc));
    // det / nu_max^2 avoids the cancellation in (delta - root) / 2.
    const double small2 = big2 > 0.0 ? inv.det / big2 : 0.0;
    return {std::sqrt(std::max(0.0, big2)), std::sqrt(std::max(0.0, small2))};
}

}  // namespace

Mat4 CovMat2::full() const {
    Mat4 gamma;
    gamma << A, C, C.transpose(), B;
    return gamma;
}

CovMat2 CovMat2::from_full(const Mat4& gamma) {
    return {gamma.topLeftCorner<2, 2>(), gamma.bottomRightCorner<2, 2>(),
            gamma.topRightCorner<2, 2>()};
}

CovMat2 tmsv(double V) {
    detail::require_finite(V, "V");
    if (V < 1.0) throw DomainError("TMSV variance must be >= 1, got " + std::to_string(V));
    const double c = std::sqrt(V * V - 1.0);
    CovMat2 cm;
    cm.A = V * Mat2::Identity();
    cm.B = V * Mat2::Identity();
    cm.C << c, 0.0, 0.0, -c;
    return cm;
}

double tmsv_variance_for_log_negativity(double ln0) {
    detail::require_non_negative(ln0, "initial log-negativity");
    return std::cosh(ln0 * std::numbers::ln2);
}

CovMat2 apply_fading_channel(const CovMat2& cm, const FadingStats& stats, double epsilon) {
    detail::require_non_negative(epsilon, "epsilon");
    if (!is_physical(cm)) throw DomainError("input covariance matrix is not physical");
    const double s = stats.sqrt_eta_mean();
    const Mat2 I = Mat2::Identity();
    CovMat2 out;
    out.A = cm.A;
    out.B = I + stats.eta_mean() * (cm.B - I) + s * s * epsilon * I;
    out.C = s * cm.C;
    if (!is_physical(out)) {
        throw NumericalError("fading channel produced an unphysical state; check the fading moments");
    }
    return out;
}

SymplecticSpectrum symplectic_eigs(const CovMat2& cm) {
    return spectrum(cm.A, cm.B, cm.C, cm.full());
}

bool is_physical(const CovMat2& cm, double tol) {
    if (!cm.full().allFinite()) return false;
    if (std::abs(cm.A(0, 1) - cm.A(1, 0)) > tol || std::abs(cm.B(0, 1) - cm.B(1, 0)) > tol) {
        return false;
    }
    if (!(cm.A(0, 0) > 0.0 && cm.B(0, 0) > 0.0)) return false;
    try {
        return symplectic_eigs(cm).nu_min >= 1.0 - tol;
    } catch (const NumericalError&) {
        return false;
    }
}

double log_negativity(const CovMat2& cm) {
    // Partial transposition of mode 2 flips p2.
    Mat2 flip = Mat2::Identity();
    flip(1, 1) = -1.0;
    CovMat2 pt{cm.A, flip * cm.B * flip, cm.C * flip};
    const double nu = spectrum(pt.A, pt.B, pt.C, pt.full()).nu_min;
    if (!(nu > 0.0)) throw NumericalError("non-positive partially transposed spectrum", nu);
    return std::max(0.0, -std::log2(nu));
}

double entropy_g(double nu) {
    detail::require_finite(nu, "symplectic eigenvalue");
    if (nu < 1.0 - kEigenSlack) {
        throw DomainError("symplectic eigenvalue below 1: " + std::to_string(nu));
    }
    nu = std::max(nu, 1.0);
    const double plus = 0.5 * (nu + 1.0);
    const double minus = 0.5 * (nu - 1.0);
    const double tail = minus > 0.0 ? minus * std::log2(minus) : 0.0;
    return plus * std::log2(plus) - tail;
}

double von_neumann_entropy(const CovMat2& cm) {
    const auto [big, small] = symplectic_eigs(cm);
    return entropy_g(big) + entropy_g(small);
}

double von_neumann_entropy(const Mat2& single_mode) {
    return entropy_g(std::sqrt(std::max(0.0, single_mode.determinant())));
}

Mat2 condition_on_homodyne(const CovMat2& cm, Mode measured_mode, Quadrature quadrature) {
    const Split s = split(cm, measured_mode);
    const int q = quadrature == Quadrature::x ? 0 : 1;
    const double variance = s.measured(q, q);
    if (!(variance > 0.0)) {
        throw DomainError("measured quadrature variance must be positive");
    }
    const Eigen::Vector2d c = s.corr.col(q);
    return s.kept - c * c.transpose() / variance;
}

Mat2 condition_on_heterodyne(const CovMat2& cm, Mode measured_mode) {
    const Split s = split(cm, measured_mode);
    const Mat2 noisy = s.measured + Mat2::Identity();
    const double det = noisy.determinant();
    if (!(std::abs(det) > 1e-300)) throw NumericalError("singular heterodyne kernel", det);
    return s.kept - s.corr * noisy.inverse() * s.corr.transpose();
}

}  // namespace fsochan
