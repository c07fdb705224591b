#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "lk/freeprob.hpp"

using namespace lk;

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return std::round(std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)));
}

// Chebyshev route: x^m = sum_k a_k T_k(x/2) on [-2, 2] and the GUE fluctuation
// covariance is (1/4) sum_k k a_k(m) a_k(n) = sum_k k C(m,(m-k)/2) C(n,(n-k)/2).
double chebyshev_alpha(int m, int n) {
    if ((m + n) % 2) return 0.0;
    double acc = 0.0;
    for (int k = 1; k <= std::min(m, n); ++k)
        if ((m - k) % 2 == 0 && (n - k) % 2 == 0) acc += k * binom(m, (m - k) / 2) * binom(n, (n - k) / 2);
    return acc;
}

// -(1/2 pi) int over {ellipse^c, |z| < R} of z^{-2} dA; the radial integral
// of 1/r is a logarithm, the angular one is trapezoidal.
cplx ellipse_t2_oracle(double a, double b) {
    const double R = std::max(a, b);
    const int n = 8192;
    cplx acc(0.0);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n;
        const double rho = a * b / std::hypot(b * std::cos(th), a * std::sin(th));
        acc += std::polar(std::log(R / rho), -2.0 * th);
    }
    return -acc * (2.0 * M_PI / n) / (2.0 * M_PI);
}

// (1/pi) int_D z^k dA over a disc, polar coordinates about its center with
// Gauss-Legendre in the radius.
cplx disc_moment_oracle(cplx c, double r, int k) {
    const int n = 256;
    cplx acc(0.0);
    for (int j = 0; j < n; ++j) {
        const double th = 2.0 * M_PI * j / n;
        auto re = [&](double rho) { return (rho * std::pow(c + std::polar(rho, th), k)).real(); };
        auto im = [&](double rho) { return (rho * std::pow(c + std::polar(rho, th), k)).imag(); };
        using GL = boost::math::quadrature::gauss<double, 8>;
        acc += cplx(GL::integrate(re, 0.0, r), GL::integrate(im, 0.0, r));
    }
    return acc * (2.0 * M_PI / n) / M_PI;
}

}  // namespace

TEST_CASE("Cauchy transforms") {
    const auto dirac = cauchy_from_moments(std::vector<double>(6, 0.0));
    const auto g = dirac.g_coeffs();
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 1.0);
    for (std::size_t j = 2; j < g.size(); ++j) CHECK(g[j] == 0.0);

    const auto sc = semicircle_moments(10);
    const double catalan[] = {1, 1, 2, 5, 14, 42};
    for (int k = 1; k <= 10; ++k) CHECK(sc[k - 1] == (k % 2 ? 0.0 : catalan[k / 2]));
    const auto gs = cauchy_from_moments(sc).g_coeffs();
    CHECK(gs[1] == 1.0);
    CHECK(gs[3] == 1.0);
    CHECK(gs[5] == 2.0);
    CHECK(gs[7] == 5.0);

    // shifting the law by c moves m_1 by c
    const double c = 0.4;
    std::vector<double> shifted(4);
    for (int k = 1; k <= 4; ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += binom(k, j) * std::pow(c, k - j) * (j == 0 ? 1.0 : sc[j - 1]);
        shifted[k - 1] = acc;
    }
    CHECK(cauchy_from_moments(shifted).m(1) == doctest::Approx(sc[0] + c));
}

TEST_CASE("Ward expansion") {
    const int K = 6;
    const auto tab = ward_second_order(cauchy_from_moments(semicircle_moments(2 * K)), K);
    for (int m = 1; m <= K; ++m)
        for (int n = 1; n <= K; ++n) {
            CHECK(tab(m, n) == tab(n, m));
            if ((m + n) % 2) CHECK(std::abs(tab(m, n)) <= 1e-12);
            CHECK(tab(m, n) == doctest::Approx(chebyshev_alpha(m, n)).epsilon(1e-12));
        }
    CHECK(tab(1, 2) == doctest::Approx(0.0));
    CHECK(tab(1, 1) == doctest::Approx(1.0).epsilon(1e-14));

    CauchyData degenerate;
    degenerate.mass = 0.0;
    degenerate.moments.assign(4, 0.0);
    CHECK_THROWS_AS(ward_second_order(degenerate, 2), std::domain_error);
    CHECK_THROWS(ward_second_order(cauchy_from_moments(semicircle_moments(5)), 3));
}

TEST_CASE("GUE sampling") {
    const auto a = gue_sample_cov(40, 600, 3, 7);
    const auto b = gue_sample_cov(40, 600, 3, 7);
    CHECK(a.alpha == b.alpha);
    CHECK(a.se == b.se);
    CHECK(std::abs(a.mean[0]) <= 3.0 * a.mean_se[0]);
    CHECK(std::abs(a(1, 1) - 1.0) <= 3.0 * a.err(1, 1));
    CHECK(gue_sample_cov(40, 600, 3, 8).alpha != a.alpha);
}

TEST_CASE("harmonic moments") {
    for (double r : {0.5, 1.0, 2.5}) {
        const auto mv = harmonic_moments(circle_boundary(r, 0.0, 256), 8);
        CHECK(std::abs(mv.t0 - r * r) < 1e-12);
        for (auto t : mv.tk) CHECK(std::abs(t) < 1e-12);
    }

    for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{1.0, 1.6}, std::pair{1.3, 0.9}}) {
        const auto mv = harmonic_moments(ellipse_boundary(a, b, 0.0, 512), 4);
        CHECK(std::abs(mv.tk[1]) > 1e-3);
        CHECK(std::abs(mv.tk[1] - ellipse_t2_oracle(a, b)) < 1e-6);
        CHECK(std::abs(mv.t0 - a * b) < 1e-12);
    }

    const cplx c(0.3, -0.2);
    const double r = 0.8;
    const auto mv = harmonic_moments(circle_boundary(r, c, 256), 3);
    CHECK(std::abs(mv.vn[0] - c * r * r) < 1e-12);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(mv.vn[k - 1] - disc_moment_oracle(c, r, k)) < 1e-12);

    // clockwise orientation and curves through the origin are refused
    auto cw = circle_boundary(1.0, 0.0, 64);
    std::reverse(cw.begin(), cw.end());
    CHECK_THROWS(harmonic_moments(cw, 3));
    CHECK_THROWS(harmonic_moments(circle_boundary(1.0, 1.0, 64), 3));
}
