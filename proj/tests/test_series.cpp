#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "lk/series.hpp"

using namespace lk;

namespace {

TruncatedSeries random_series(std::mt19937_64& rng, int order, bool unit_constant = false) {
    std::normal_distribution<double> g;
    TruncatedSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = cplx(g(rng), g(rng)) * std::pow(0.5, k);
    if (unit_constant) s[0] = 1.0;
    return s;
}

double max_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    double m = 0.0;
    for (int k = 0; k <= std::max(a.order(), b.order()); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// Schoolbook long division of 1 by a.
std::vector<cplx> long_division_reciprocal(const std::vector<cplx>& a, int order) {
    std::vector<cplx> rem(static_cast<std::size_t>(order) + 1, cplx(0.0)), q(rem.size());
    rem[0] = 1.0;
    for (int k = 0; k <= order; ++k) {
        q[k] = rem[k] / a[0];
        for (std::size_t j = 0; j < a.size() && k + j <= static_cast<std::size_t>(order); ++j) rem[k + j] -= q[k] * a[j];
    }
    return q;
}

}  // namespace

TEST_CASE("products") {
    TruncatedSeries a({1.0, 1.0, 0.0, 0.0}), b({1.0, -1.0, 0.0, 0.0});
    const auto p = a * b;
    CHECK(p[0] == cplx(1.0));
    CHECK(p[1] == cplx(0.0));
    CHECK(p[2] == cplx(-1.0));
    CHECK(p[3] == cplx(0.0));

    std::mt19937_64 rng(1);
    const auto r = random_series(rng, 8);
    CHECK(max_diff(r * TruncatedSeries::constant(1.0, 8), r) == 0.0);

    const auto x = random_series(rng, 8), y = random_series(rng, 8);
    const auto xy = series_mul(x, y);
    for (int n = 0; n <= 8; ++n) {
        cplx acc(0.0);
        for (int i = 0; i <= n; ++i) acc += x[i] * y[n - i];
        CHECK(std::abs(xy[n] - acc) < 1e-15);
    }
    CHECK_THROWS(series_mul(TruncatedSeries(3), TruncatedSeries(4)));
}

TEST_CASE("distributivity") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_series(rng, 12), b = random_series(rng, 12), c = random_series(rng, 12);
        const auto lhs = (a + b) * c, rhs = a * c + b * c;
        for (int k = 0; k <= 12; ++k) CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-13 * std::max(1.0, std::abs(lhs[k])));
    }
}

TEST_CASE("log and exp") {
    CHECK(max_diff(series_log(TruncatedSeries::constant(1.0, 10)), TruncatedSeries(10)) == 0.0);
    const auto l = series_log(TruncatedSeries::monomial(0, 1.0, 12) + TruncatedSeries::monomial(1, 1.0, 12));
    for (int k = 1; k <= 12; ++k) CHECK(std::abs(l[k] - cplx((k % 2 ? 1.0 : -1.0) / k)) < 1e-15);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_series(rng, 16, true);
        CHECK(max_diff(series_exp(series_log(a)), a) < 1e-12);
    }
    CHECK_THROWS(series_log(TruncatedSeries::constant(2.0, 4)));
}

TEST_CASE("reciprocal") {
    const auto geo = series_reciprocal(TruncatedSeries({1.0, -1.0, 0.0, 0.0, 0.0, 0.0}));
    for (int k = 0; k <= 5; ++k) CHECK(geo[k] == cplx(1.0));

    const std::vector<cplx> a{1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0};
    const auto r = series_reciprocal(TruncatedSeries(a));
    const auto q = long_division_reciprocal({1.0, 1.0, 1.0}, 6);
    for (int k = 0; k <= 6; ++k) CHECK(std::abs(r[k] - q[k]) < 1e-15);

    std::mt19937_64 rng(4);
    const auto b = random_series(rng, 20, true);
    const auto one = series_mul(b, series_reciprocal(b));
    CHECK(std::abs(one[0] - 1.0) < 1e-14);
    for (int k = 1; k <= 20; ++k) CHECK(std::abs(one[k]) < 1e-13);
    CHECK_THROWS(series_reciprocal(TruncatedSeries(3)));
}

TEST_CASE("poly_eval_on_tail") {
    // p(y) = y, g = z - c
    LaurentTail g{1.0, {cplx(-0.3), 0.0, 0.0, 0.0}};
    auto w = poly_eval_on_tail(Polynomial{{0.0, 1.0}}, g, 2);
    CHECK(w.entry(1) == cplx(1.0));
    CHECK(w.entry(0) == cplx(-0.3));
    CHECK(w.entry(-1) == cplx(0.0));

    // y^2 with g = z + 1/z
    LaurentTail h{1.0, {0.0, 1.0, 0.0, 0.0, 0.0}};
    w = poly_eval_on_tail(Polynomial{{0.0, 0.0, 1.0}}, h, 3);
    CHECK(w.entry(2) == cplx(1.0));
    CHECK(w.entry(1) == cplx(0.0));
    CHECK(w.entry(0) == cplx(2.0));
    CHECK(w.entry(-1) == cplx(0.0));
    CHECK(w.entry(-2) == cplx(1.0));
    CHECK(w.entry(-3) == cplx(0.0));

    // random quartic against explicit powers of g as Laurent coefficient lists
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    const int N = 6, d = 4;
    LaurentTail r{cplx(n01(rng), n01(rng)), {}};
    for (int k = 0; k <= d + N; ++k) r.coeffs.push_back(cplx(n01(rng), n01(rng)) * std::pow(0.6, k));
    Polynomial p;
    for (int j = 0; j <= d; ++j) p.coeffs.push_back(cplx(n01(rng), n01(rng)));
    // naive powers of g as coefficient lists; entry i of g^j sits at exponent j - i
    std::vector<cplx> gv{r.lead};
    gv.insert(gv.end(), r.coeffs.begin(), r.coeffs.end());
    std::map<int, cplx> total;
    total[0] += p.coeffs[0];
    std::vector<cplx> pw{1.0};
    for (int j = 1; j <= d; ++j) {
        std::vector<cplx> next(pw.size() + gv.size() - 1, cplx(0.0));
        for (std::size_t i = 0; i < pw.size(); ++i)
            for (std::size_t k = 0; k < gv.size(); ++k) next[i + k] += pw[i] * gv[k];
        pw = std::move(next);
        for (std::size_t i = 0; i < pw.size(); ++i) total[j - static_cast<int>(i)] += p.coeffs[j] * pw[i];
    }
    w = poly_eval_on_tail(p, r, N);
    for (int e = d; e >= -N; --e) CHECK(std::abs(w.entry(e) - total[e]) < 1e-12);
}

TEST_CASE("Witt action") {
    const auto l1 = witt_action(1, TruncatedSeries::monomial(1, 1.0, 6));
    CHECK(l1[2] == cplx(-1.0));
    for (int k = 0; k <= 6; ++k)
        if (k != 2) CHECK(l1[k] == cplx(0.0));
    for (int n = 1; n <= 4; ++n)
        for (int k = 1; k <= 4; ++k) {
            const auto r = witt_action(n, TruncatedSeries::monomial(k, 1.0, 10));
            CHECK(r[n + k] == cplx(-double(k)));
        }

    // [l_m, l_n] = (m - n) l_{m+n}, exactly on integer coefficients
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> coin(-9, 9);
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            TruncatedSeries a(24);
            for (int k = 0; k <= 24; ++k) a[k] = cplx(coin(rng), coin(rng));
            const auto lhs = witt_action(m, witt_action(n, a)) - witt_action(n, witt_action(m, a));
            const auto rhs = double(m - n) * witt_action(m + n, a);
            for (int k = 0; k <= 24; ++k) CHECK(lhs[k] == rhs[k]);
        }
}
