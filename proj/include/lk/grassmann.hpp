#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lk/control.hpp"
#include "lk/grunsky.hpp"

namespace lk {

// h = sum_{|k| <= K} h_k z^k with H^{1/2} norm^2 = |h_0|^2 + sum_k k (|h_k|^2 + |h_{-k}|^2).
struct SobolevVector {
    int K = 0;
    std::vector<cplx> pos;  // h_1..h_K
    std::vector<cplx> neg;  // h_{-1}..h_{-K}
    cplx h0{0.0};

    explicit SobolevVector(int window = 0) : K(window), pos(window), neg(window) {}

    double norm() const;
    // Coordinates in {z^n / sqrt n} u {1} u {z^{-n} / sqrt n}, ordered [pos 1..K | 0 | neg 1..K].
    Eigen::VectorXcd orthonormal() const;
    static SobolevVector from_orthonormal(const Eigen::VectorXcd& v);
};

// Diagonal sqrt|n| (1 at n = 0): raw Fourier coefficients -> orthonormal coordinates.
struct LambdaWeight {
    int K = 0;
    Eigen::VectorXd diag() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& raw) const;
    Eigen::VectorXcd inverse(const Eigen::VectorXcd& coords) const;
};

// (I + B B^*)^{-1} via Cholesky.
Mat a_matrix(const Mat& B);

struct ProjectionBlocks {
    int M = 0;
    Mat P11, P13, P31, P33;
    double idempotence_residual = 0.0;
    double selfadjoint_residual = 0.0;

    // Orthonormal basis ordered [pos 1..M | 1 | neg 1..M].
    Mat assembled() const;
};

// P11 = I - B^*AB, P13 = B^*A, P31 = B(I - B^*AB), P33 = BB^*A.
// Throws std::runtime_error when ||P^2 - P|| exceeds tol.
ProjectionBlocks projection_blocks(const Mat& B, double tol = 1e-8);

// Columns w_n / sqrt n and v_n / sqrt n in orthonormal coordinates.
Mat fixed_frame(const Mat& B);       // [I; 0; B]
Mat annihilated_frame(const Mat& B); // [-B^*; 0; I]

struct Projected {
    SobolevVector value;
    // norm of negative modes beyond the window, dropped by the projection
    double beyond_window = 0.0;
};

// Outside the window the truncated operator acts as identity on positive
// modes and kills negative ones (B vanishes there).
Projected project(const SobolevVector& h, const ProjectionBlocks& P);

// Spectral norm of a matrix in the orthonormal basis.
double op_norm_h12(const Mat& m);

struct Snapshot {
    double t = 0.0;
    Mat B, A;
    ProjectionBlocks P;
    Mat Pfull;
};

Snapshot make_snapshot(double t, const Mat& B);

struct ContinuityRow {
    double s = 0.0, t = 0.0, omega = 0.0;
    double opnorm = 0.0, ratio = 0.0;
    double dB = 0.0, dA = 0.0;
    double term[5] = {0, 0, 0, 0, 0};      // operator norms of the five difference operators
    double estimate[5] = {0, 0, 0, 0, 0};  // their telescoped bounds through dB, dA
    bool decomposition_ok = true;
};

struct ContinuityReport {
    std::vector<ContinuityRow> rows;
    double c_star = 0.0;
    double omega_total = 0.0;
    double tail_certificate = 0.0;
    double slope = 0.0;  // log-log slope of opnorm vs omega for pairs anchored at the middle grid point
    bool decomposition_holds = true;
};

// Refuses (std::domain_error) unless w(0,T) < 1/8.
ContinuityReport continuity_experiment(const std::vector<Snapshot>& snaps, const ControlFunction& omega, double T,
                                       int M);

}  // namespace lk
