#pragma once

#include <cstdint>
#include <vector>

#include "lk/series.hpp"

namespace lk {

// Moments m_1..m_K of a probability measure (m_0 = mass, 1 unless testing
// degenerate data); G(z) = sum_{k>=0} m_k z^{-k-1}.
struct CauchyData {
    double mass = 1.0;
    std::vector<double> moments;  // m_1..m_K

    int K() const { return static_cast<int>(moments.size()); }
    double m(int k) const { return k == 0 ? mass : moments.at(static_cast<std::size_t>(k - 1)); }
    // coefficient of z^{-j}, j = 0..K+1 (coeff 0 is the z^0 term)
    std::vector<double> g_coeffs() const;
};

CauchyData cauchy_from_moments(const std::vector<double>& moments);

// Even moments Catalan(k), odd zero, up to order K.
std::vector<double> semicircle_moments(int K);

struct SecondOrderTable {
    int K = 0;
    std::vector<double> alpha;  // row-major alpha_{m,n}, 1 <= m,n <= K
    std::vector<double> se;     // standard errors (Monte Carlo only)
    std::vector<double> mean;   // E Tr X^k (Monte Carlo only)
    std::vector<double> mean_se;

    double operator()(int m, int n) const { return alpha[static_cast<std::size_t>((m - 1) * K + (n - 1))]; }
    double err(int m, int n) const { return se[static_cast<std::size_t>((m - 1) * K + (n - 1))]; }
};

// alpha_{m,n} from G(z,w) = G'(z)G'(w)/(G(z)-G(w))^2 - 1/(z-w)^2 = sum alpha_{m,n} z^{-m-1} w^{-n-1}.
// Uses moments up to m_{2K}.
SecondOrderTable ward_second_order(const CauchyData& G, int K);

// Empirical Cov(Tr X^m, Tr X^n) over GUE samples with entry variance 1/N,
// jackknife standard errors. Trial i draws from seed_seq{seed, i}.
SecondOrderTable gue_sample_cov(int N, int trials, int K, std::uint64_t seed);

struct MomentVector {
    double t0 = 0.0;
    std::vector<cplx> tk;  // t_1..t_K
    std::vector<cplx> vn;  // v_1..v_K
};

// Counterclockwise samples zeta(2 pi j / n), j = 0..n-1 (no repeated endpoint).
// t_0 = (1/2 pi i) oint conj(z) dz, t_k = (1/2 pi i k) oint z^{-k} conj(z) dz,
// v_n = (1/2 pi i) oint z^n conj(z) dz; trapezoidal rule with spectral derivative.
MomentVector harmonic_moments(const std::vector<cplx>& boundary, int K);

std::vector<cplx> ellipse_boundary(double a, double b, cplx center, int samples);
std::vector<cplx> circle_boundary(double r, cplx center, int samples);

}  // namespace lk
