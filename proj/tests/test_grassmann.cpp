#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "lk/grassmann.hpp"
#include "lk/loewner.hpp"

using namespace lk;

namespace {

Mat random_symmetric_contraction(std::mt19937_64& rng, int M, double norm) {
    std::normal_distribution<double> g;
    Mat X(M, M);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) X(i, j) = cplx(g(rng), g(rng));
    Mat S = X + X.transpose();
    return S * (norm / spectral_norm(S));
}

}  // namespace

TEST_CASE("A matrix") {
    CHECK((a_matrix(Mat::Zero(4, 4)) - Mat::Identity(4, 4)).norm() == 0.0);
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 5; ++trial) {
        const Mat B = random_symmetric_contraction(rng, 8, 0.9);
        const Mat A = a_matrix(B);
        CHECK(spectral_norm(A) <= 1.0 + 1e-14);
        CHECK((A * (Mat::Identity(8, 8) + B * B.adjoint()) - Mat::Identity(8, 8)).norm() < 1e-12);
    }
}

TEST_CASE("projection blocks") {
    const int M = 6;
    auto P = projection_blocks(Mat::Zero(M, M));
    const Mat full = P.assembled();
    Mat expect = Mat::Zero(2 * M + 1, 2 * M + 1);
    expect.topLeftCorner(M + 1, M + 1).setIdentity();
    CHECK((full - expect).norm() == 0.0);

    std::mt19937_64 rng(62);
    const Mat B = random_symmetric_contraction(rng, M, 0.8);
    P = projection_blocks(B);
    const Mat F = P.assembled();
    CHECK((F * F - F).norm() < 1e-10);
    CHECK(P.idempotence_residual < 1e-10);
    CHECK(P.selfadjoint_residual < 1e-12);
    const Mat A = a_matrix(B);
    CHECK(spectral_norm(P.P31 - A * B) < 1e-12);
    CHECK(spectral_norm(P.P33 - (Mat::Identity(M, M) - A)) < 1e-12);

    // P is the orthogonal projection onto the column span of [I; 0; B] plus the constant
    Mat W = Mat::Zero(2 * M + 1, M + 1);
    W.topLeftCorner(M, M).setIdentity();
    W(M, M) = 1.0;
    W.bottomLeftCorner(M, M) = B;
    const Mat G = W.adjoint() * W;
    const Mat Pref = W * G.inverse() * W.adjoint();
    CHECK((Pref - F).norm() < 1e-12);

    CHECK(spectral_norm(F * fixed_frame(B) - fixed_frame(B)) < 1e-10);
    CHECK(spectral_norm(F * annihilated_frame(B)) < 1e-10);
}

TEST_CASE("project") {
    const int M = 5;
    std::mt19937_64 rng(63);
    const auto P = projection_blocks(random_symmetric_contraction(rng, M, 0.5));

    SobolevVector one(M);
    one.h0 = 1.0;
    const auto r1 = project(one, P);
    CHECK(std::abs(r1.value.h0 - 1.0) < 1e-15);
    for (int k = 0; k < M; ++k) CHECK(std::abs(r1.value.pos[k]) + std::abs(r1.value.neg[k]) < 1e-15);

    const auto P0 = projection_blocks(Mat::Zero(M, M));
    SobolevVector zm3(M);
    zm3.neg[2] = 1.0;
    CHECK(project(zm3, P0).value.norm() == 0.0);

    // a column of the fixed frame, converted back to raw coefficients
    const Mat B = random_symmetric_contraction(rng, M, 0.7);
    const auto PB = projection_blocks(B);
    const Mat W = fixed_frame(B);
    for (int n = 0; n < M; ++n) {
        const auto h = SobolevVector::from_orthonormal(W.col(n));
        const auto r = project(h, PB);
        CHECK((r.value.orthonormal() - h.orthonormal()).norm() < 1e-10);
    }

    // H^{1/2} norm against the orthonormal coordinates
    SobolevVector h(3);
    h.h0 = 2.0;
    h.pos = {1.0, 0.0, cplx(0.0, 1.0)};
    h.neg = {0.0, 1.0, 0.0};
    CHECK(h.norm() == doctest::Approx(std::sqrt(4.0 + 1.0 + 3.0 + 2.0)));
    CHECK(h.orthonormal().norm() == doctest::Approx(h.norm()));
    LambdaWeight L{3};
    Eigen::VectorXcd raw = Eigen::VectorXcd::Random(7);
    CHECK((L.inverse(L.apply(raw)) - raw).norm() < 1e-15);
}

TEST_CASE("continuity on a small-beta flow") {
    const double beta = 2e-4, T = 1.0;
    DrivingSpec d;
    d.x0 = PiecewisePath::zero(T);
    d.x = {PiecewisePath::zero(T), PiecewisePath::linear(T, beta)};
    const auto w = ControlFunction::power_increment(std::sqrt(6.5 * beta), 0.5);
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(T * i / 10.0);

    auto run = [&](int M) {
        std::vector<Snapshot> snaps;
        for (const auto& st : solve_coefficients(d, grid, 2 * M + 1)) {
            auto tb = grunsky_coefficients(st.series(), M);
            snaps.push_back(make_snapshot(st.t, grunsky_operator(tb)));
        }
        return continuity_experiment(snaps, w, T, M);
    };
    const auto r8 = run(8);
    CHECK(r8.decomposition_holds);
    CHECK(std::isfinite(r8.c_star));
    CHECK(r8.c_star > 0.0);
    CHECK(r8.rows.size() >= 50);
    for (const auto& row : r8.rows)
        if (row.s == row.t) CHECK(row.ratio == 0.0);
    // P_t - P_s is linear in w(s,t) to leading order
    CHECK(r8.slope == doctest::Approx(1.0).epsilon(0.1));

    const auto r12 = run(12), r16 = run(16);
    CHECK(std::abs(r12.c_star - r8.c_star) <= 0.01 * r8.c_star);
    CHECK(std::abs(r16.c_star - r8.c_star) <= 0.01 * r8.c_star);

    CHECK_THROWS_AS(continuity_experiment({}, ControlFunction::linear_rate(0.2), 1.0, 8), std::domain_error);
}
