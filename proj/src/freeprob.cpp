#include "lk/freeprob.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "lk/parallel.hpp"

namespace lk {

std::vector<double> CauchyData::g_coeffs() const {
    std::vector<double> g(static_cast<std::size_t>(K()) + 2, 0.0);
    for (int k = 0; k <= K(); ++k) g[static_cast<std::size_t>(k) + 1] = m(k);
    return g;
}

CauchyData cauchy_from_moments(const std::vector<double>& moments) {
    if (moments.empty()) throw std::invalid_argument("cauchy_from_moments: need at least m_1");
    return CauchyData{1.0, moments};
}

std::vector<double> semicircle_moments(int K) {
    std::vector<double> m(static_cast<std::size_t>(K), 0.0);
    double catalan = 1.0;  // C_j
    for (int j = 1; 2 * j <= K; ++j) {
        catalan = catalan * 2.0 * (2 * j - 1) / (j + 1);
        m[static_cast<std::size_t>(2 * j - 1)] = catalan;
    }
    return m;
}

namespace {

// Bivariate series truncated at total degree D; comp[d][i] multiplies x^i y^{d-i}.
struct Bivariate {
    std::vector<std::vector<double>> comp;

    explicit Bivariate(int D) : comp(static_cast<std::size_t>(D) + 1) {
        for (int d = 0; d <= D; ++d) comp[static_cast<std::size_t>(d)].assign(static_cast<std::size_t>(d) + 1, 0.0);
    }
    int degree() const { return static_cast<int>(comp.size()) - 1; }
};

Bivariate mul(const Bivariate& a, const Bivariate& b) {
    const int D = a.degree();
    Bivariate r(D);
    for (int da = 0; da <= D; ++da)
        for (int db = 0; da + db <= D; ++db)
            for (int i = 0; i <= da; ++i) {
                const double av = a.comp[da][i];
                if (av == 0.0) continue;
                for (int j = 0; j <= db; ++j) r.comp[da + db][i + j] += av * b.comp[db][j];
            }
    return r;
}

Bivariate reciprocal(const Bivariate& a) {
    const int D = a.degree();
    const double c0 = a.comp[0][0];
    Bivariate r(D);
    r.comp[0][0] = 1.0 / c0;
    for (int d = 1; d <= D; ++d) {
        std::vector<double> acc(static_cast<std::size_t>(d) + 1, 0.0);
        for (int j = 1; j <= d; ++j)
            for (int i = 0; i <= j; ++i) {
                const double av = a.comp[j][i];
                if (av == 0.0) continue;
                for (int l = 0; l <= d - j; ++l) acc[i + l] += av * r.comp[d - j][l];
            }
        for (int i = 0; i <= d; ++i) r.comp[d][i] = -acc[i] / c0;
    }
    return r;
}

// Exact division of each homogeneous component by (x - y); degree drops by one.
Bivariate divide_by_difference(const Bivariate& a) {
    const int D = a.degree();
    Bivariate r(D - 1);
    for (int d = 1; d <= D; ++d) {
        const auto& c = a.comp[d];
        double run = 0.0, scale = 0.0;
        for (int i = 0; i <= d; ++i) scale = std::max(scale, std::abs(c[i]));
        for (int i = 0; i < d; ++i) {
            run -= c[i];
            r.comp[d - 1][i] = run;
        }
        if (std::abs(run - c[d]) > 1e-9 * std::max(1.0, scale))
            throw std::logic_error("ward expansion: numerator not divisible by (x - y)");
    }
    if (std::abs(a.comp[0][0]) > 1e-12) throw std::logic_error("ward expansion: constant numerator term");
    return r;
}

}  // namespace

SecondOrderTable ward_second_order(const CauchyData& G, int K) {
    if (K < 1) throw std::invalid_argument("ward_second_order: K must be positive");
    if (G.K() < 2 * K)
        throw std::invalid_argument("ward_second_order: need moments up to m_" + std::to_string(2 * K));
    if (std::abs(G.mass) < 1e-14) throw std::domain_error("ward_second_order: H(z,z) vanishes (degenerate G)");
    // x = 1/z, y = 1/w, phi(x) = sum m_k x^{k+1}; phi(x) - phi(y) = (x - y) H(x,y).
    // G(z,w) = x^2 y^2 (phi'(x) phi'(y) - H^2) / ((x - y)^2 H^2).
    const int D = 2 * K;
    Bivariate dphi(D), H(D);
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i <= d; ++i) {
            dphi.comp[d][i] = (i + 1) * G.m(i) * (d - i + 1) * G.m(d - i);
            H.comp[d][i] = G.m(d);
        }
    const Bivariate H2 = mul(H, H);
    Bivariate num(D);
    for (int d = 0; d <= D; ++d)
        for (int i = 0; i <= d; ++i) num.comp[d][i] = dphi.comp[d][i] - H2.comp[d][i];
    const Bivariate Q = divide_by_difference(divide_by_difference(num));
    Bivariate H2r(D - 2);
    for (int d = 0; d <= D - 2; ++d) H2r.comp[d] = H2.comp[d];
    const Bivariate R = mul(Q, reciprocal(H2r));

    SecondOrderTable tbl;
    tbl.K = K;
    tbl.alpha.assign(static_cast<std::size_t>(K * K), 0.0);
    for (int m = 1; m <= K; ++m)
        for (int n = 1; n <= K; ++n)
            tbl.alpha[static_cast<std::size_t>((m - 1) * K + (n - 1))] = R.comp[m + n - 2][m - 1];
    return tbl;
}

SecondOrderTable gue_sample_cov(int N, int trials, int K, std::uint64_t seed) {
    if (N <= 0 || trials <= 0) throw std::invalid_argument("gue_sample_cov: N and trials must be positive");
    if (trials < 3) throw std::invalid_argument("gue_sample_cov: jackknife needs at least 3 trials");
    if (K < 1) throw std::invalid_argument("gue_sample_cov: K must be positive");
    std::vector<double> traces(static_cast<std::size_t>(trials) * K);
    const double sd_diag = 1.0 / std::sqrt(double(N));
    const double sd_off = 1.0 / std::sqrt(2.0 * N);
    parallel_for(trials, [&](int trial) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(trial)};
        std::mt19937_64 rng(ss);
        std::normal_distribution<double> gauss;
        Eigen::MatrixXcd X(N, N);
        for (int i = 0; i < N; ++i) {
            X(i, i) = sd_diag * gauss(rng);
            for (int j = i + 1; j < N; ++j) {
                const double re = sd_off * gauss(rng);
                const double im = sd_off * gauss(rng);
                X(i, j) = cplx(re, im);
                X(j, i) = cplx(re, -im);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(X, Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& lam = es.eigenvalues();
        for (int k = 1; k <= K; ++k) {
            double tr = 0.0;
            for (int i = 0; i < N; ++i) tr += std::pow(lam(i), k);
            traces[static_cast<std::size_t>(trial) * K + (k - 1)] = tr;
        }
    });

    const double n = trials;
    std::vector<double> mean(static_cast<std::size_t>(K), 0.0);
    for (int i = 0; i < trials; ++i)
        for (int k = 0; k < K; ++k) mean[k] += traces[static_cast<std::size_t>(i) * K + k];
    for (auto& v : mean) v /= n;

    SecondOrderTable tbl;
    tbl.K = K;
    tbl.alpha.assign(static_cast<std::size_t>(K * K), 0.0);
    tbl.se.assign(static_cast<std::size_t>(K * K), 0.0);
    tbl.mean = mean;
    tbl.mean_se.assign(static_cast<std::size_t>(K), 0.0);
    auto dev = [&](int i, int k) { return traces[static_cast<std::size_t>(i) * K + k] - mean[k]; };
    for (int k = 0; k < K; ++k) {
        double ss = 0.0;
        for (int i = 0; i < trials; ++i) ss += dev(i, k) * dev(i, k);
        tbl.mean_se[k] = std::sqrt(ss / (n - 1.0) / n);
    }
    for (int a = 0; a < K; ++a)
        for (int b = a; b < K; ++b) {
            double S = 0.0;
            for (int i = 0; i < trials; ++i) S += dev(i, a) * dev(i, b);
            const double full = S / (n - 1.0);
            // leave-one-out: S_(i) = S - n/(n-1) dx_i dy_i, estimate S_(i)/(n-2)
            double jm = 0.0;
            std::vector<double> loo(static_cast<std::size_t>(trials));
            for (int i = 0; i < trials; ++i) {
                loo[i] = (S - n / (n - 1.0) * dev(i, a) * dev(i, b)) / (n - 2.0);
                jm += loo[i];
            }
            jm /= n;
            double var = 0.0;
            for (int i = 0; i < trials; ++i) var += (loo[i] - jm) * (loo[i] - jm);
            const double se = std::sqrt((n - 1.0) / n * var);
            tbl.alpha[static_cast<std::size_t>(a * K + b)] = tbl.alpha[static_cast<std::size_t>(b * K + a)] = full;
            tbl.se[static_cast<std::size_t>(a * K + b)] = tbl.se[static_cast<std::size_t>(b * K + a)] = se;
        }
    return tbl;
}

MomentVector harmonic_moments(const std::vector<cplx>& boundary, int K) {
    const auto n = static_cast<int>(boundary.size());
    if (n < 8) throw std::invalid_argument("harmonic_moments: need at least 8 boundary samples");
    if (K < 0) throw std::invalid_argument("harmonic_moments: K must be nonnegative");
    double scale = 0.0, rmin = std::abs(boundary[0]);
    for (auto z : boundary) {
        scale = std::max(scale, std::abs(z));
        rmin = std::min(rmin, std::abs(z));
    }
    if (rmin <= 1e-12 * scale) throw std::domain_error("harmonic_moments: curve passes through 0");
    if (std::abs(boundary.back() - boundary.front()) <= 1e-14 * scale)
        throw std::invalid_argument("harmonic_moments: samples repeat the starting point; pass one period without the endpoint");
    // winding number about 0
    double turn = 0.0;
    for (int j = 0; j < n; ++j) turn += std::arg(boundary[(j + 1) % n] / boundary[j]);
    const double winding = turn / (2.0 * M_PI);
    if (std::abs(winding - 1.0) > 1e-6)
        throw std::invalid_argument("harmonic_moments: curve must wind once counterclockwise about 0 (winding " +
                                    std::to_string(winding) + ")");

    // spectral derivative dz/dtheta
    Eigen::FFT<double> fft;
    std::vector<cplx> spec;
    fft.fwd(spec, boundary);
    for (int k = 0; k < n; ++k) {
        int freq = k <= n / 2 ? k : k - n;
        if (n % 2 == 0 && k == n / 2) freq = 0;
        spec[k] *= cplx(0.0, double(freq));
    }
    std::vector<cplx> dz;
    fft.inv(dz, spec);

    const double h = 2.0 * M_PI / n;
    const cplx two_pi_i(0.0, 2.0 * M_PI);
    MomentVector mv;
    mv.tk.assign(static_cast<std::size_t>(K), cplx(0.0));
    mv.vn.assign(static_cast<std::size_t>(K), cplx(0.0));
    cplx t0(0.0);
    for (int j = 0; j < n; ++j) {
        const cplx z = boundary[j];
        const cplx w = std::conj(z) * dz[j] * h;
        t0 += w;
        cplx zinv = 1.0, zp = 1.0;
        for (int k = 1; k <= K; ++k) {
            zinv /= z;
            zp *= z;
            mv.tk[k - 1] += zinv * w;
            mv.vn[k - 1] += zp * w;
        }
    }
    mv.t0 = (t0 / two_pi_i).real();
    for (int k = 1; k <= K; ++k) {
        mv.tk[k - 1] /= two_pi_i * double(k);
        mv.vn[k - 1] /= two_pi_i;
    }
    return mv;
}

std::vector<cplx> ellipse_boundary(double a, double b, cplx center, int samples) {
    std::vector<cplx> z(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        const double th = 2.0 * M_PI * j / samples;
        z[j] = center + cplx(a * std::cos(th), b * std::sin(th));
    }
    return z;
}

std::vector<cplx> circle_boundary(double r, cplx center, int samples) { return ellipse_boundary(r, r, center, samples); }

}  // namespace lk
