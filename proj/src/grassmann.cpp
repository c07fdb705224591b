#include "lk/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lk {

double SobolevVector::norm() const {
    double acc = std::norm(h0);
    for (int k = 1; k <= K; ++k) acc += k * (std::norm(pos[k - 1]) + std::norm(neg[k - 1]));
    return std::sqrt(acc);
}

Eigen::VectorXcd SobolevVector::orthonormal() const {
    Eigen::VectorXcd v(2 * K + 1);
    for (int k = 1; k <= K; ++k) {
        v(k - 1) = std::sqrt(double(k)) * pos[k - 1];
        v(K + k) = std::sqrt(double(k)) * neg[k - 1];
    }
    v(K) = h0;
    return v;
}

SobolevVector SobolevVector::from_orthonormal(const Eigen::VectorXcd& v) {
    if (v.size() % 2 != 1) throw std::invalid_argument("orthonormal coordinates need odd length");
    const int K = static_cast<int>(v.size() / 2);
    SobolevVector h(K);
    for (int k = 1; k <= K; ++k) {
        h.pos[k - 1] = v(k - 1) / std::sqrt(double(k));
        h.neg[k - 1] = v(K + k) / std::sqrt(double(k));
    }
    h.h0 = v(K);
    return h;
}

Eigen::VectorXd LambdaWeight::diag() const {
    Eigen::VectorXd d(2 * K + 1);
    for (int k = 1; k <= K; ++k) d(k - 1) = d(K + k) = std::sqrt(double(k));
    d(K) = 1.0;
    return d;
}

Eigen::VectorXcd LambdaWeight::apply(const Eigen::VectorXcd& raw) const {
    if (raw.size() != 2 * K + 1) throw std::invalid_argument("LambdaWeight: window mismatch");
    return diag().cast<cplx>().cwiseProduct(raw);
}

Eigen::VectorXcd LambdaWeight::inverse(const Eigen::VectorXcd& coords) const {
    if (coords.size() != 2 * K + 1) throw std::invalid_argument("LambdaWeight: window mismatch");
    return coords.cwiseQuotient(diag().cast<cplx>());
}

Mat a_matrix(const Mat& B) {
    if (B.rows() != B.cols()) throw std::invalid_argument("a_matrix: B must be square");
    const auto n = B.rows();
    Mat G = Mat::Identity(n, n) + B * B.adjoint();
    Eigen::LLT<Mat> llt(G);
    if (llt.info() != Eigen::Success) throw std::runtime_error("a_matrix: Cholesky failed");
    Mat A = llt.solve(Mat::Identity(n, n));
    return 0.5 * (A + A.adjoint());
}

Mat ProjectionBlocks::assembled() const {
    const int n = 2 * M + 1;
    Mat P = Mat::Zero(n, n);
    P.block(0, 0, M, M) = P11;
    P.block(0, M + 1, M, M) = P13;
    P.block(M + 1, 0, M, M) = P31;
    P.block(M + 1, M + 1, M, M) = P33;
    P(M, M) = 1.0;
    return P;
}

ProjectionBlocks projection_blocks(const Mat& B, double tol) {
    if (B.rows() != B.cols()) throw std::invalid_argument("projection_blocks: B must be square");
    const int M = static_cast<int>(B.rows());
    const Mat A = a_matrix(B);
    const Mat Bs = B.adjoint();
    const Mat I = Mat::Identity(M, M);
    ProjectionBlocks P;
    P.M = M;
    P.P11 = I - Bs * A * B;
    P.P13 = Bs * A;
    P.P31 = B * P.P11;
    P.P33 = B * Bs * A;
    const Mat full = P.assembled();
    P.idempotence_residual = op_norm_h12(full * full - full);
    P.selfadjoint_residual = op_norm_h12(full - full.adjoint());
    if (P.idempotence_residual > tol)
        throw std::runtime_error("projection_blocks: idempotence residual " + std::to_string(P.idempotence_residual) +
                                 " above tolerance");
    return P;
}

Mat fixed_frame(const Mat& B) {
    const auto M = B.rows();
    Mat W = Mat::Zero(2 * M + 1, M);
    W.topRows(M) = Mat::Identity(M, M);
    W.bottomRows(M) = B;
    return W;
}

Mat annihilated_frame(const Mat& B) {
    const auto M = B.rows();
    Mat V = Mat::Zero(2 * M + 1, M);
    V.topRows(M) = -B.adjoint();
    V.bottomRows(M) = Mat::Identity(M, M);
    return V;
}

Projected project(const SobolevVector& h, const ProjectionBlocks& P) {
    if (h.K < P.M)
        throw std::invalid_argument("project: vector window " + std::to_string(h.K) + " below projection window " +
                                    std::to_string(P.M));
    const int M = P.M;
    const auto x = h.orthonormal();
    const int K = h.K;
    Eigen::VectorXcd xp = x.segment(0, M), xn = x.segment(K + 1, M);
    Projected out{SobolevVector(K), 0.0};
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(2 * K + 1);
    y.segment(0, M) = P.P11 * xp + P.P13 * xn;
    y.segment(K + 1, M) = P.P31 * xp + P.P33 * xn;
    y(K) = x(K);
    double dropped = 0.0;
    for (int k = M + 1; k <= K; ++k) {
        y(k - 1) = x(k - 1);
        dropped += std::norm(x(K + k));
    }
    out.value = SobolevVector::from_orthonormal(y);
    out.beyond_window = std::sqrt(dropped);
    return out;
}

double op_norm_h12(const Mat& m) { return spectral_norm(m); }

Snapshot make_snapshot(double t, const Mat& B) {
    Snapshot s;
    s.t = t;
    s.B = B;
    s.A = a_matrix(B);
    s.P = projection_blocks(B);
    s.Pfull = s.P.assembled();
    return s;
}

namespace {

Mat product(const std::vector<const Mat*>& f, std::size_t from, std::size_t to, Eigen::Index n) {
    Mat r = Mat::Identity(n, n);
    for (std::size_t i = from; i < to; ++i) r = r * *f[i];
    return r;
}

// ||prod X_t - prod X_s|| <= sum_j ||X_1^s..X_{j-1}^s|| ||X_j^t - X_j^s|| ||X_{j+1}^t..X_k^t||
double telescoped(const std::vector<const Mat*>& xs, const std::vector<const Mat*>& xt) {
    const auto n = xs.front()->rows();
    double total = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j)
        total += spectral_norm(product(xs, 0, j, n)) * spectral_norm(*xt[j] - *xs[j]) *
                 spectral_norm(product(xt, j + 1, xt.size(), n));
    return total;
}

}  // namespace

ContinuityReport continuity_experiment(const std::vector<Snapshot>& snaps, const ControlFunction& omega, double T,
                                       int M) {
    ContinuityReport rep;
    rep.omega_total = omega(0.0, T);
    if (!(8.0 * rep.omega_total < 1.0))
        throw std::domain_error("continuity: hypothesis w(0,T) < 1/8 violated (w(0,T) = " +
                                std::to_string(rep.omega_total) + ")");
    rep.tail_certificate = grunsky_tail_certificate(rep.omega_total, M);

    std::vector<Mat> Bs;
    Bs.reserve(snaps.size());
    for (const auto& s : snaps) Bs.push_back(s.B.adjoint());

    for (std::size_t i = 0; i < snaps.size(); ++i)
        for (std::size_t j = i + 1; j < snaps.size(); ++j) {
            const auto& S = snaps[i];
            const auto& Tt = snaps[j];
            ContinuityRow row;
            row.s = S.t;
            row.t = Tt.t;
            row.omega = omega(row.s, row.t);
            row.opnorm = op_norm_h12(Tt.Pfull - S.Pfull);
            row.ratio = row.omega > 0.0 ? row.opnorm / row.omega : 0.0;
            row.dB = spectral_norm(Tt.B - S.B);
            row.dA = spectral_norm(Tt.A - S.A);

            const Mat& Bs_s = Bs[i];
            const Mat& Bs_t = Bs[j];
            const Mat X1s = Bs_s * S.A * S.B, X1t = Bs_t * Tt.A * Tt.B;
            const Mat X2s = Bs_s * S.A, X2t = Bs_t * Tt.A;
            const Mat X4s = S.B * Bs_s * S.A * S.B, X4t = Tt.B * Bs_t * Tt.A * Tt.B;
            const Mat X5s = S.B * Bs_s * S.A, X5t = Tt.B * Bs_t * Tt.A;
            row.term[0] = spectral_norm(X1s - X1t);
            row.term[1] = spectral_norm(X2t - X2s);
            row.term[2] = row.dB;
            row.term[3] = spectral_norm(X4t - X4s);
            row.term[4] = spectral_norm(X5t - X5s);
            row.estimate[0] = telescoped({&Bs_s, &S.A, &S.B}, {&Bs_t, &Tt.A, &Tt.B});
            row.estimate[1] = telescoped({&Bs_s, &S.A}, {&Bs_t, &Tt.A});
            row.estimate[2] = row.dB;
            row.estimate[3] = telescoped({&S.B, &Bs_s, &S.A, &S.B}, {&Tt.B, &Bs_t, &Tt.A, &Tt.B});
            row.estimate[4] = telescoped({&S.B, &Bs_s, &S.A}, {&Tt.B, &Bs_t, &Tt.A});

            const double sq = [&] {
                double a = 0.0;
                for (int k = 0; k < 2; ++k) a += 2.0 * row.term[k] * row.term[k];
                for (int k = 2; k < 5; ++k) a += 3.0 * row.term[k] * row.term[k];
                return a;
            }();
            const double scale = 1e-12 * (1.0 + row.opnorm);
            bool ok = row.opnorm * row.opnorm <= sq + scale * scale + 1e-24;
            for (int k = 0; k < 5; ++k) ok = ok && row.term[k] <= row.estimate[k] * (1.0 + 1e-10) + 1e-15;
            row.decomposition_ok = ok;
            rep.decomposition_holds = rep.decomposition_holds && ok;
            rep.c_star = std::max(rep.c_star, row.ratio);
            rep.rows.push_back(row);
        }

    // slope of log opnorm against log omega for pairs (s_mid, t), t > s_mid
    if (snaps.size() >= 3) {
        const double s_mid = snaps[snaps.size() / 2].t;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (const auto& r : rep.rows)
            if (r.s == s_mid && r.opnorm > 1e-15 && r.omega > 0.0) {
                const double x = std::log(r.omega), y = std::log(r.opnorm);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++n;
            }
        const double den = n * sxx - sx * sx;
        rep.slope = (n >= 2 && den > 0.0) ? (n * sxy - sx * sy) / den : std::nan("");
    } else {
        rep.slope = std::nan("");
    }
    return rep;
}

}  // namespace lk
