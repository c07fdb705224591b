#include "lk/grunsky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "lk/grassmann.hpp"

namespace lk {

double GrunskyTable::asymmetry() const {
    double worst = 0.0;
    for (int m = 1; m <= M; ++m)
        for (int n = m + 1; n <= M; ++n) worst = std::max(worst, std::abs((*this)(m, n) - (*this)(n, m)));
    return worst;
}

namespace {

// g(x) = x / f(x) = 1 / (a_1 + a_2 x + ...), order N-1.
TruncatedSeries inverse_quotient(const TruncatedSeries& f) {
    const int N = f.order();
    if (N < 2) throw std::invalid_argument("exterior map needs order >= 2");
    if (std::abs(f[0]) > 1e-14 * std::max(1.0, std::abs(f[1]))) throw std::invalid_argument("f(0) must vanish");
    if (f[1] == cplx(0.0)) throw std::domain_error("f'(0) = 0");
    TruncatedSeries shifted(N - 1);
    for (int k = 0; k <= N - 1; ++k) shifted[k] = f[k + 1];
    return series_reciprocal(shifted);
}

}  // namespace

LaurentTail exterior_map(const TruncatedSeries& f) {
    const auto g = inverse_quotient(f);
    LaurentTail F;
    F.lead = g[0];
    F.coeffs.assign(g.coeffs().begin() + 1, g.coeffs().end());
    return F;
}

GrunskyTable grunsky_coefficients(const TruncatedSeries& f, int M) {
    if (M < 1) throw std::invalid_argument("grunsky_coefficients: M must be positive");
    if (f.order() < 2 * M + 1)
        throw std::invalid_argument("grunsky_coefficients: series order " + std::to_string(f.order()) +
                                    " below 2M+1 = " + std::to_string(2 * M + 1));
    const auto g = inverse_quotient(f);
    // With x = 1/z, y = 1/w the difference quotient is
    //   Q = g_0 - sum_{k>=2} g_k sum_{i+j=k-2} x^{i+1} y^{j+1} = sum_n q_n(x) y^n.
    const cplx q0 = g[0];
    std::vector<TruncatedSeries> q(M + 1, TruncatedSeries(M));
    for (int n = 1; n <= M; ++n)
        for (int i = 0; i + 1 <= M; ++i) q[n][i + 1] = -g[i + n + 1];
    // log Q in powers of y: n L_n q_0 = n q_n - sum_{k=1}^{n-1} k L_k q_{n-k}
    std::vector<TruncatedSeries> L(M + 1, TruncatedSeries(M));
    for (int n = 1; n <= M; ++n) {
        TruncatedSeries acc = q[n] * cplx(double(n));
        for (int k = 1; k < n; ++k) acc -= series_mul(L[k], q[n - k]) * cplx(double(k));
        L[n] = acc * (1.0 / (double(n) * q0));
    }
    GrunskyTable tbl;
    tbl.M = M;
    tbl.log_a1 = std::log(f[1]);
    tbl.b.assign(static_cast<std::size_t>(M * M), cplx(0.0));
    for (int m = 1; m <= M; ++m)
        for (int n = 1; n <= M; ++n) tbl(m, n) = -L[n][m];
    return tbl;
}

Polynomial faber_polynomial(const TruncatedSeries& f, int n) {
    if (n < 1) throw std::invalid_argument("faber_polynomial: n must be positive");
    const auto F = exterior_map(f);
    if (F.order() + 1 < n) throw std::invalid_argument("faber_polynomial: series order too small for degree n");
    // F = z h(x), x = 1/z; [z^e] F^j = [x^{j-e}] h^j.
    TruncatedSeries h(n);
    h[0] = F.lead;
    for (int k = 1; k <= n; ++k) h[k] = F.tail(k - 1);
    std::vector<TruncatedSeries> pw(n + 1);
    pw[0] = TruncatedSeries::constant(1.0, n);
    for (int j = 1; j <= n; ++j) pw[j] = series_mul(pw[j - 1], h);
    Polynomial p;
    p.coeffs.assign(n + 1, cplx(0.0));
    for (int e = n; e >= 0; --e) {
        cplx rhs = e == n ? cplx(1.0) : cplx(0.0);
        for (int j = e + 1; j <= n; ++j) rhs -= p.coeffs[j] * pw[j][j - e];
        if (pw[e][0] == cplx(0.0)) throw std::domain_error("faber_polynomial: singular triangular system");
        p.coeffs[e] = rhs / pw[e][0];
    }
    return p;
}

std::vector<cplx> faber_tail(const TruncatedSeries& f, int n, int K) {
    const auto p = faber_polynomial(f, n);
    const auto win = poly_eval_on_tail(p, exterior_map(f), K);
    std::vector<cplx> out(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) out[k - 1] = win.entry(-k);
    return out;
}

Mat grunsky_operator(const GrunskyTable& tbl) {
    Mat B(tbl.M, tbl.M);
    for (int k = 1; k <= tbl.M; ++k)
        for (int n = 1; n <= tbl.M; ++n) B(k - 1, n - 1) = std::sqrt(double(k) * n) * tbl(k, n);
    return B;
}

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

GrunskyInequalityReport verify_grunsky_inequality(const Mat& B, int trials, unsigned seed) {
    GrunskyInequalityReport rep;
    rep.spectral_norm = spectral_norm(B);
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    const auto M = B.cols();
    for (int i = 0; i < trials; ++i) {
        // lambda_k / sqrt(k) in the orthonormal coordinates
        Eigen::VectorXcd v(M);
        for (Eigen::Index k = 0; k < M; ++k) v(k) = cplx(gauss(rng), gauss(rng));
        const double nv = v.norm();
        if (nv == 0.0) continue;
        rep.max_quadratic_ratio = std::max(rep.max_quadratic_ratio, (B * v).norm() / nv);
    }
    return rep;
}

double grunsky_coefficient_bound(int m, int n, double w) {
    const int s = m + n;
    if (s < 3) throw std::invalid_argument("grunsky_coefficient_bound needs m+n >= 3");
    return std::pow(8.0 * w, s) / (16.0 * s * (s - 1) * (s - 2));
}

double grunsky_modulus_bound(int m, int n, double w_st, double w_T) {
    const int s = m + n;
    if (s < 3) throw std::invalid_argument("grunsky_modulus_bound needs m+n >= 3");
    return w_st * std::pow(8.0 * w_T, s - 1) / (16.0 * (s - 1) * (s - 2));
}

double grunsky_tail_certificate(double w, int M) {
    if (!(8.0 * w < 1.0)) return std::numeric_limits<double>::infinity();
    if (w <= 0.0) return 0.0;
    double total = 0.0;
    for (int s = M + 2; s < 100000; ++s) {
        // sum of m n over m + n = s with max(m, n) > M
        double weight = 0.0;
        for (int m = 1; m < s; ++m)
            if (std::max(m, s - m) > M) weight += double(m) * (s - m);
        const double b = std::pow(8.0 * w, s) / (16.0 * s * (s - 1) * (s - 2));
        const double term = weight * b * b;
        total += term;
        if (term < 1e-34 * total || b * b < 1e-300) break;
    }
    return std::sqrt(total);
}

double GrunskyBoundReport::overall() const {
    return std::max({max_ratio_b11, max_ratio_b11_mod, max_ratio_coeff, max_ratio_modulus});
}

namespace {

double ratio_of(double lhs, double bound) {
    if (bound > 0.0) return lhs / bound;
    return lhs <= 1e-300 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

GrunskyBoundReport check_grunsky_bounds(const std::vector<GrunskyTable>& tables, const ControlFunction& omega,
                                        double T, int max_sum) {
    GrunskyBoundReport rep;
    const double wT = omega(0.0, T);
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto& tb = tables[i];
        const double w = omega(0.0, tb.t);
        rep.max_ratio_b11 = std::max(rep.max_ratio_b11, ratio_of(std::abs(tb(1, 1)), w * w / 2.0));
        for (int m = 1; m <= tb.M; ++m)
            for (int n = 1; n <= tb.M; ++n) {
                if (m + n < 3 || m + n > max_sum) continue;
                const double r = ratio_of(std::abs(tb(m, n)), grunsky_coefficient_bound(m, n, w));
                if (r > rep.max_ratio_coeff) {
                    rep.max_ratio_coeff = r;
                    rep.worst_m = m;
                    rep.worst_n = n;
                    rep.worst_t = tb.t;
                }
            }
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            const auto& ta = tables[j];
            const double s = std::min(tb.t, ta.t), t = std::max(tb.t, ta.t);
            if (s == t) continue;
            const double wst = omega(s, t);
            ++rep.pairs;
            rep.max_ratio_b11_mod = std::max(rep.max_ratio_b11_mod, ratio_of(std::abs(ta(1, 1) - tb(1, 1)), wst * wT));
            const int Mm = std::min(ta.M, tb.M);
            for (int m = 1; m <= Mm; ++m)
                for (int n = 1; n <= Mm; ++n) {
                    if (m + n < 3 || m + n > max_sum) continue;
                    rep.max_ratio_modulus = std::max(
                        rep.max_ratio_modulus, ratio_of(std::abs(ta(m, n) - tb(m, n)), grunsky_modulus_bound(m, n, wst, wT)));
                }
        }
    }
    return rep;
}

namespace {

// sqrt(sum_{m,n>=1} m n |modulus majorant|^2); (1,1) uses w(s,t) w(0,T).
double hs_majorant(double wst, double wT) {
    if (wst <= 0.0) return 0.0;
    double total = wst * wT * wst * wT;
    for (int s = 3; s < 100000; ++s) {
        double weight = 0.0;
        for (int m = 1; m < s; ++m) weight += double(m) * (s - m);
        const double b = wst * std::pow(8.0 * wT, s - 1) / (16.0 * (s - 1) * (s - 2));
        const double term = weight * b * b;
        total += term;
        if (term < 1e-34 * total || b * b < 1e-300) break;
    }
    return std::sqrt(total);
}

}  // namespace

OperatorModulusReport check_operator_modulus(const std::vector<double>& times, const std::vector<Mat>& B,
                                             const ControlFunction& omega, double T) {
    if (times.size() != B.size()) throw std::invalid_argument("check_operator_modulus: times/B length mismatch");
    const double wT = omega(0.0, T);
    if (!(8.0 * wT < 1.0))
        throw std::domain_error("check_operator_modulus: hypothesis w(0,T) < 1/8 violated (w(0,T) = " +
                                std::to_string(wT) + ")");
    OperatorModulusReport rep;
    rep.c = 8.0 * wT / (1.0 - 64.0 * wT * wT);
    std::vector<Mat> A;
    A.reserve(B.size());
    for (const auto& b : B) A.push_back(a_matrix(b));
    for (std::size_t i = 0; i < times.size(); ++i)
        for (std::size_t j = i + 1; j < times.size(); ++j) {
            OperatorModulusRow row;
            row.s = std::min(times[i], times[j]);
            row.t = std::max(times[i], times[j]);
            row.omega = omega(row.s, row.t);
            const Mat dB = B[j] - B[i];
            row.dB = spectral_norm(dB);
            row.dA = spectral_norm(A[j] - A[i]);
            row.hs_majorant = hs_majorant(row.omega, wT);
            row.ratio_B = ratio_of(row.dB, rep.c * row.omega);
            row.ratio_A = ratio_of(row.dA, 2.0 * rep.c * row.omega);
            const double fro = dB.norm();
            const double slack = 1e-13;
            rep.chain_holds = rep.chain_holds && row.dB <= fro * (1 + slack) + 1e-300 &&
                              fro <= row.hs_majorant * (1 + 1e-9) + 1e-15 &&
                              row.hs_majorant <= rep.c * row.omega * (1 + 1e-12);
            rep.max_ratio_B = std::max(rep.max_ratio_B, row.ratio_B);
            rep.max_ratio_A = std::max(rep.max_ratio_A, row.ratio_A);
            rep.rows.push_back(row);
        }
    return rep;
}

}  // namespace lk
