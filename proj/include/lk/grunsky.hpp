#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lk/control.hpp"
#include "lk/series.hpp"

namespace lk {

using Mat = Eigen::MatrixXcd;

// Grunsky coefficients b_{-m,-n}, 1 <= m,n <= M, in the convention
//   log((F(z) - F(w)) / (z - w)) = const - sum_{m,n>=1} b_{-m,-n} z^{-m} w^{-n},
// F(zeta) = 1 / f(1/zeta). With it, b_{-1,-1} = (a_2^2 - a_1 a_3) / a_1^2.
struct GrunskyTable {
    int M = 0;
    double t = 0.0;
    cplx log_a1{0.0};
    std::vector<cplx> b;  // row-major, b[(m-1) M + (n-1)]

    cplx operator()(int m, int n) const { return b[static_cast<std::size_t>((m - 1) * M + (n - 1))]; }
    cplx& operator()(int m, int n) { return b[static_cast<std::size_t>((m - 1) * M + (n - 1))]; }
    double asymmetry() const;
};

// F(zeta) = zeta / a_1 - a_2 / a_1^2 + O(1/zeta); coefficients up to zeta^{-(N-2)}.
LaurentTail exterior_map(const TruncatedSeries& f);

// Requires f of order >= 2M + 1.
GrunskyTable grunsky_coefficients(const TruncatedSeries& f, int M);

// Phi_n with Phi_n(F(z)) = z^n + O(1/z) (no z^0 term).
Polynomial faber_polynomial(const TruncatedSeries& f, int n);

// Coefficients of Phi_n(F(z)) at z^{-1}..z^{-K}; equal to n b_{-n,-k}.
std::vector<cplx> faber_tail(const TruncatedSeries& f, int n, int K);

// B[k-1][n-1] = sqrt(k n) b_{-k,-n}
Mat grunsky_operator(const GrunskyTable& tbl);

struct GrunskyInequalityReport {
    double spectral_norm = 0.0;
    double max_quadratic_ratio = 0.0;  // sup over random lambda of ||B l|| / ||l||
    int trials = 0;
};

GrunskyInequalityReport verify_grunsky_inequality(const Mat& B, int trials, unsigned seed = 7);

double spectral_norm(const Mat& m);

// Majorant of (8w)^{m+n} / (16 (m+n)(m+n-1)(m+n-2)), m + n >= 3.
double grunsky_coefficient_bound(int m, int n, double w);
// Modulus majorant w_st (8 w_T)^{m+n-1} / (16 (m+n-1)(m+n-2)), m + n >= 3.
double grunsky_modulus_bound(int m, int n, double w_st, double w_T);

// Hilbert-Schmidt norm of the part of B outside the M x M window implied by
// the coefficient majorant; +inf when 8w >= 1.
double grunsky_tail_certificate(double w, int M);

struct GrunskyBoundReport {
    double max_ratio_b11 = 0.0;        // |b11(t)| / (w(0,t)^2 / 2)
    double max_ratio_b11_mod = 0.0;    // |b11(t) - b11(s)| / (w(s,t) w(0,T))
    double max_ratio_coeff = 0.0;      // coefficient majorant, 3 <= m+n <= max_sum
    double max_ratio_modulus = 0.0;    // modulus majorant
    int worst_m = 0, worst_n = 0;
    double worst_t = 0.0;
    long long pairs = 0;

    double overall() const;
};

GrunskyBoundReport check_grunsky_bounds(const std::vector<GrunskyTable>& tables, const ControlFunction& omega,
                                        double T, int max_sum);

struct OperatorModulusRow {
    double s = 0.0, t = 0.0, omega = 0.0;
    double dB = 0.0, dA = 0.0, hs_majorant = 0.0;
    double ratio_B = 0.0, ratio_A = 0.0;
};

struct OperatorModulusReport {
    double c = 0.0;
    std::vector<OperatorModulusRow> rows;
    double max_ratio_B = 0.0, max_ratio_A = 0.0;
    // measured ||dB|| <= ||dB||_F <= HS majorant <= c w(s,t) chain, worst slack
    bool chain_holds = true;
};

// Refuses (std::domain_error) unless w(0,T) < 1/8.
OperatorModulusReport check_operator_modulus(const std::vector<double>& times, const std::vector<Mat>& B,
                                             const ControlFunction& omega, double T);

}  // namespace lk
