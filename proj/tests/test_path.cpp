#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lk/driving.hpp"
#include "lk/path.hpp"

using namespace lk;

TEST_CASE("one_variation") {
    const PiecewisePath ramp({0.0, 1.0}, {0.0, 5.0});
    CHECK(one_variation(ramp, 0.0, 1.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(one_variation(ramp, 0.3, 0.3) == 0.0);

    const PiecewisePath zigzag({0.0, 0.5, 1.0}, {0.0, 1.0, 0.0});
    CHECK(one_variation(zigzag, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(one_variation(zigzag, 0.25, 0.75) == doctest::Approx(1.0).epsilon(1e-15));

    // additivity at knots
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    std::vector<double> kn{0.0, 0.1, 0.35, 0.6, 0.8, 1.0};
    std::vector<cplx> v;
    for (std::size_t i = 0; i < kn.size(); ++i) v.push_back(cplx(g(rng), g(rng)));
    const PiecewisePath p(kn, v);
    for (std::size_t i = 1; i + 1 < kn.size(); ++i) {
        const double lhs = one_variation(p, 0.05, kn[i]) + one_variation(p, kn[i], 0.9);
        CHECK(std::abs(lhs - one_variation(p, 0.05, 0.9)) <= 1e-13);
    }
}

TEST_CASE("evaluation and local polynomials") {
    const PiecewisePath p({0.0, 0.5, 2.0}, {cplx(1.0, 0.0), cplx(2.0, -1.0), cplx(0.0, 1.0)});
    CHECK(std::abs(p(0.25) - cplx(1.5, -0.5)) < 1e-15);
    CHECK(std::abs(p(1.25) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(p.segment_of(0.5) == 0);
    CHECK(p.segment_of(0.7) == 1);
    CHECK_THROWS(p.segment_of(2.5));

    const auto loc = p.local(0.75, 1.75, 4);
    for (double u : {0.0, 0.3, 1.0}) CHECK(std::abs(loc.eval(u) - p(0.75 + u)) < 1e-14);
}

TEST_CASE("iterated integrals from generators") {
    const auto y = PiecewisePath::linear(1.0, 1.0);
    const auto x = make_driving({{y}}, ControlFunction::linear_rate(1.0), PiecewisePath::zero(1.0));
    for (double t : {0.2, 0.7, 1.0}) CHECK(std::abs(x.x[0](t) - t) < 1e-14);

    const auto d2 = make_driving({{y}, {y, y}}, ControlFunction::linear_rate(1.0), PiecewisePath::zero(1.0));
    for (double t : {0.2, 0.7, 1.0}) CHECK(std::abs(d2.x[1](t) - t * t / 2.0) < 1e-14);

    const auto z = PiecewisePath::zero(1.0);
    const auto d0 = make_driving({{z}, {z, z}, {z, z, z}}, ControlFunction::linear_rate(1.0), z);
    for (const auto& xn : d0.x) CHECK(xn.is_zero());

    // piecewise generators against the direct nested Riemann-Stieltjes sum
    const PiecewisePath a({0.0, 0.3, 1.0}, {0.0, 0.2, -0.1});
    const PiecewisePath b({0.0, 0.6, 1.0}, {cplx(0.0), cplx(0.0, 0.3), cplx(0.2, 0.3)});
    const auto d = make_driving({{a}, {a, b}}, ControlFunction::linear_rate(1.0), PiecewisePath::zero(1.0));
    const int n = 20000;
    cplx acc(0.0), ya(0.0);
    for (int i = 0; i < n; ++i) {
        const double t0 = double(i) / n, t1 = double(i + 1) / n;
        const cplx da = a(t1) - a(t0), db = b(t1) - b(t0);
        acc += (ya + 0.5 * da) * db;  // midpoint for the inner integral
        ya += da;
    }
    CHECK(std::abs(d.x[1](1.0) - acc) < 1e-8);
    CHECK(std::abs(iterated_integral({&a, &b}, 0.0, 1.0) - acc) < 1e-8);

    // generators must be controlled
    CHECK_THROWS(make_driving({{PiecewisePath::linear(1.0, 2.0)}}, ControlFunction::linear_rate(1.0), z));
    CHECK_THROWS(make_driving({{y}, {y}}, ControlFunction::linear_rate(1.0), z));
}

TEST_CASE("Gauss-Legendre weighted increment") {
    // x_0 = t, x_2 = t: int_0^t e^{-2u} du
    DrivingSpec d;
    d.x0 = PiecewisePath::linear(1.0, 1.0);
    d.x = {PiecewisePath::zero(1.0), PiecewisePath::linear(1.0, 1.0)};
    for (double t : {0.1, 0.5, 1.0}) CHECK(std::abs(weighted_increment_gl(d, 2, t) - (1.0 - std::exp(-2.0 * t)) / 2.0) < 1e-14);
}
