#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lk/campaign.hpp"
#include "lk/freeprob.hpp"
#include "lk/grassmann.hpp"
#include "lk/grunsky.hpp"
#include "lk/loewner.hpp"

namespace py = pybind11;
using namespace lk;

namespace {

DrivingSpec driving_from(double T, const std::vector<std::pair<std::vector<double>, std::vector<cplx>>>& x,
                         std::optional<std::pair<std::vector<double>, std::vector<cplx>>> x0) {
    DrivingSpec d;
    d.x0 = x0 ? PiecewisePath(x0->first, x0->second) : PiecewisePath::zero(T);
    for (const auto& [kn, v] : x) d.x.push_back(PiecewisePath(kn, v));
    d.validate();
    return d;
}

std::vector<std::vector<cplx>> rows_of(const Mat& m) {
    std::vector<std::vector<cplx>> out(static_cast<std::size_t>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j));
    return out;
}

Mat mat_of(const std::vector<std::vector<cplx>>& rows) {
    const int n = static_cast<int>(rows.size());
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("expected a square matrix");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Controlled Loewner-Kufarev numerics";

    m.def(
        "solve_coefficients",
        [](double T, const std::vector<std::pair<std::vector<double>, std::vector<cplx>>>& x, const std::vector<double>& times,
           int order, std::optional<std::pair<std::vector<double>, std::vector<cplx>>> x0) {
            std::vector<std::vector<cplx>> out;
            for (const auto& st : solve_coefficients(driving_from(T, x, x0), times, order)) out.push_back(st.a);
            return out;
        },
        py::arg("horizon"), py::arg("x"), py::arg("times"), py::arg("order"), py::arg("x0") = py::none(),
        "Taylor coefficients a_0..a_N at each time for piecewise-linear x_k given as (knots, values).");

    m.def(
        "grunsky_coefficients",
        [](const std::vector<cplx>& a, int M) {
            const auto tb = grunsky_coefficients(TruncatedSeries(a), M);
            std::vector<std::vector<cplx>> out(static_cast<std::size_t>(M));
            for (int i = 1; i <= M; ++i)
                for (int j = 1; j <= M; ++j) out[i - 1].push_back(tb(i, j));
            return out;
        },
        py::arg("a"), py::arg("M"), "Grunsky table b_{-m,-n}, 1 <= m,n <= M, from Taylor coefficients a_0..a_N.");

    m.def(
        "grunsky_operator",
        [](const std::vector<cplx>& a, int M) { return rows_of(grunsky_operator(grunsky_coefficients(TruncatedSeries(a), M))); },
        py::arg("a"), py::arg("M"));

    m.def(
        "projection",
        [](const std::vector<std::vector<cplx>>& B) { return rows_of(projection_blocks(mat_of(B)).assembled()); },
        py::arg("B"), "Projection onto the graph of B in the basis [z^1..z^M | 1 | z^-1..z^-M].");

    m.def("spectral_norm", [](const std::vector<std::vector<cplx>>& B) { return spectral_norm(mat_of(B)); });

    m.def(
        "ward_alpha",
        [](int K) {
            const auto t = ward_second_order(cauchy_from_moments(semicircle_moments(2 * K)), K);
            std::vector<std::vector<double>> out(static_cast<std::size_t>(K));
            for (int i = 1; i <= K; ++i)
                for (int j = 1; j <= K; ++j) out[i - 1].push_back(t(i, j));
            return out;
        },
        py::arg("K"), "Second-order Ward coefficients of the semicircle law.");

    m.def(
        "gue_cov",
        [](int N, int trials, int K, std::uint64_t seed) {
            const auto t = gue_sample_cov(N, trials, K, seed);
            return py::make_tuple(t.alpha, t.se);
        },
        py::arg("N"), py::arg("trials"), py::arg("K"), py::arg("seed") = 42, "Row-major covariance table and standard errors.");

    m.def(
        "harmonic_moments",
        [](const std::vector<cplx>& boundary, int K) {
            const auto mv = harmonic_moments(boundary, K);
            return py::make_tuple(mv.t0, mv.tk, mv.vn);
        },
        py::arg("boundary"), py::arg("K"), "(t0, [t_1..t_K], [v_1..v_K]) from counterclockwise boundary samples.");

    m.def(
        "run_campaign",
        [](const std::string& config_path, const std::string& campaign) {
            const auto rep = run_campaign(load_config(config_path), campaign);
            return py::make_tuple(rep.passed(), rep.csv(), rep.summary().dump());
        },
        py::arg("config"), py::arg("campaign"), "(passed, csv, summary_json) for one campaign.");
}
