#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "specgap/assembly.hpp"
#include "specgap/common.hpp"

namespace specgap {

struct SolverOptions {
    double tol = 1e-9;        // relative residual target for iterative Ritz pairs
    int dense_cutoff = 600;   // free-dof threshold for the dense fallback
    int max_subspace = 192;   // accumulated basis cap before thick restart
    int max_iters = 400;
    unsigned seed = 12345;
    bool force_iterative = false;
};

struct InertiaResult {
    int count = 0;       // negative eigenvalues of A - mu_used * M
    double mu_used = 0;  // equals the requested shift unless a retry fired
    bool shifted = false;
};

namespace detail {

// One L D L^T attempt. The factorization is a congruence (symmetric AMD
// permutation plus unit lower triangular), so the signs of D carry the
// inertia. Near-singular pivots invalidate that reading, hence the scale
// check against the largest pivot.
inline std::optional<int> try_inertia(const SpMat& S) {
    Eigen::SimplicialLDLT<SpMat> ldlt(S);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    const Eigen::VectorXd d = ldlt.vectorD();
    double dmax = 0;
    for (int i = 0; i < d.size(); ++i) {
        if (!std::isfinite(d[i])) return std::nullopt;
        dmax = std::max(dmax, std::abs(d[i]));
    }
    if (dmax == 0) return std::nullopt;
    int neg = 0;
    for (int i = 0; i < d.size(); ++i) {
        if (std::abs(d[i]) <= 1e-14 * dmax) return std::nullopt;
        if (d[i] < 0) ++neg;
    }
    return neg;
}

} // namespace detail

// Number of pencil eigenvalues strictly below mu, by Sylvester inertia of
// A - mu M. If the factorization breaks down (mu essentially on the
// spectrum) the shift is nudged down once by 1e-10 * (1 + |mu|) and the
// result reports the shift actually used.
inline InertiaResult inertia_count(const SpMat& A, const SpMat& M, double mu) {
    InertiaResult res;
    res.mu_used = mu;
    if (A.rows() == 0) return res;
    SpMat S = A - mu * M;
    if (auto neg = detail::try_inertia(S)) {
        res.count = *neg;
        return res;
    }
    const double mu2 = mu - 1e-10 * (1 + std::abs(mu));
    S = A - mu2 * M;
    if (auto neg = detail::try_inertia(S)) {
        res.count = *neg;
        res.mu_used = mu2;
        res.shifted = true;
        return res;
    }
    throw SpecgapError("inertia factorization broke down at shift " + fmt17(mu) +
                       " and at the retry shift " + fmt17(mu2));
}

// Open versus closed eigenvalue counts at a probe. The closed count widens
// the probe by a fixed relative band so that a probe sitting on a discrete
// eigenvalue (or its roundoff-split cluster) counts the whole cluster.
struct CountingReport {
    double probe = 0;
    int n_strictly_below = 0;
    int n_below_or_equal = 0;
    double mu_strict_used = 0;
    double mu_closed_used = 0;
    bool strict_shifted = false;
    bool closed_shifted = false;
};

inline CountingReport counting_report(const SpMat& A, const SpMat& M, double mu) {
    CountingReport rep;
    rep.probe = mu;
    const InertiaResult open = inertia_count(A, M, mu);
    const double mu_plus = mu + 1e-8 * (1 + std::abs(mu));
    const InertiaResult closed = inertia_count(A, M, mu_plus);
    rep.n_strictly_below = open.count;
    rep.n_below_or_equal = closed.count;
    rep.mu_strict_used = open.mu_used;
    rep.mu_closed_used = closed.mu_used;
    rep.strict_shifted = open.shifted;
    rep.closed_shifted = closed.shifted;
    return rep;
}

struct SpectralResult {
    std::vector<double> values;  // ascending
    Eigen::MatrixXd vectors;     // free-dof coefficients, M-orthonormal columns
    bool used_dense = false;
    int iterations = 0;
};

namespace detail {

// Two-pass modified Gram-Schmidt in the M inner product of the block W
// against the accumulated basis (V, MV) and against itself. Columns that
// collapse are replaced once by a fresh random direction, then dropped if
// still degenerate. Returns the accepted columns.
inline Eigen::MatrixXd m_orthonormalize(const Eigen::MatrixXd& V, const Eigen::MatrixXd& MV,
                                        const SpMat& M, Eigen::MatrixXd W, std::mt19937& rng) {
    const int n = static_cast<int>(W.rows());
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Eigen::VectorXd> accepted, maccepted;
    auto m_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(std::max(v.dot(M * v), 0.0)); };
    for (int c = 0; c < W.cols(); ++c) {
        Eigen::VectorXd w = W.col(c);
        bool ok = false;
        for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
            const double n0 = m_norm(w);
            if (n0 > 0) {
                w /= n0;
                // Repeated projection passes with renormalization. Near
                // convergence the informative correction is the tiny remainder
                // of an almost-converged direction, so the collapse threshold
                // must sit just above roundoff, not at the solver tolerance.
                // A column is kept only when the latest pass removed little of
                // it: dividing by a tiny remainder amplifies projection
                // roundoff, and accepting such a column seeds loss of basis
                // orthogonality that snowballs once the projector itself
                // degrades. Columns that never stabilize carry no new
                // direction and fall through to the random retry.
                for (int pass = 0; pass < 3; ++pass) {
                    if (V.cols() > 0) w -= V * (MV.transpose() * w);
                    for (std::size_t j = 0; j < accepted.size(); ++j)
                        w -= accepted[j] * maccepted[j].dot(w);
                    const double n1 = m_norm(w);
                    if (n1 <= 1e-13) break; // numerically inside the span
                    w /= n1;
                    if (n1 > 0.1) {
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok)
                for (int i = 0; i < n; ++i) w[i] = unif(rng);
        }
        if (!ok) continue;
        accepted.push_back(w);
        maccepted.push_back(M * w);
    }
    Eigen::MatrixXd out(n, static_cast<int>(accepted.size()));
    for (std::size_t j = 0; j < accepted.size(); ++j) out.col(static_cast<int>(j)) = accepted[j];
    return out;
}

} // namespace detail

// All pencil eigenvalues strictly below mu, with M-orthonormal eigenvectors.
// The wanted count m comes from the inertia at mu, so the returned list has
// length m by construction. Small systems use a dense generalized solve;
// larger ones run shift-invert subspace iteration with an accumulated
// Rayleigh-Ritz basis: the shift is driven below the whole spectrum (so the
// factored matrix is positive definite), the basis grows by preconditioned
// blocks, and a thick restart compresses it at the cap. Iteration stops only
// when exactly m Ritz values sit below mu and each passes a true-residual
// test against the sparse matrices.
inline SpectralResult eigs_below(const SpMat& A, const SpMat& M, double mu,
                                 const SolverOptions& opts = {}) {
    SpectralResult res;
    const int n = static_cast<int>(A.rows());
    if (n == 0) return res;
    const InertiaResult want = inertia_count(A, M, mu);
    const int m = want.count;
    const double cut = want.mu_used;
    if (m == 0) {
        res.vectors.resize(n, 0);
        return res;
    }

    if (n <= opts.dense_cutoff && !opts.force_iterative) {
        Eigen::MatrixXd Ad(A), Md(M);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ad, Md);
        if (ges.info() != Eigen::Success) throw SpecgapError("dense generalized eigensolver failed");
        res.values.assign(ges.eigenvalues().data(), ges.eigenvalues().data() + m);
        res.vectors = ges.eigenvectors().leftCols(m);
        res.used_dense = true;
        return res;
    }

    // Shift below the whole spectrum by doubling the step until no
    // eigenvalue lies under it; A - sigma M is then positive definite.
    double sigma = cut - 1, step = 1;
    for (int guard = 0;; ++guard) {
        if (guard > 80) throw SpecgapError("failed to bracket the bottom of the spectrum");
        if (inertia_count(A, M, sigma).count == 0) break;
        step *= 2;
        sigma -= step;
    }
    Eigen::SimplicialLDLT<SpMat> F(A - sigma * M);
    if (F.info() != Eigen::Success)
        throw SpecgapError("shifted factorization failed at the bracketing shift");

    std::mt19937 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int cap = std::min(opts.max_subspace, n);
    const int b = std::min(n, std::max(2 * m, m + 8));
    const int p = std::max(m, 2);
    const int keep = std::min(cap, std::max(2 * m, m + 8));

    Eigen::MatrixXd V(n, 0), AV(n, 0), MV(n, 0);
    Eigen::MatrixXd H(0, 0), G(0, 0);

    auto append_block = [&](const Eigen::MatrixXd& Wraw) {
        Eigen::MatrixXd W = detail::m_orthonormalize(V, MV, M, Wraw, rng);
        const int q = static_cast<int>(V.cols());
        const int pw = static_cast<int>(W.cols());
        if (pw == 0) return false;
        Eigen::MatrixXd AW = A * W, MW = M * W;
        Eigen::MatrixXd Hn(q + pw, q + pw), Gn(q + pw, q + pw);
        Hn.topLeftCorner(q, q) = H;
        Gn.topLeftCorner(q, q) = G;
        if (q > 0) {
            Hn.topRightCorner(q, pw) = V.transpose() * AW;
            Hn.bottomLeftCorner(pw, q) = Hn.topRightCorner(q, pw).transpose();
            Gn.topRightCorner(q, pw) = V.transpose() * MW;
            Gn.bottomLeftCorner(pw, q) = Gn.topRightCorner(q, pw).transpose();
        }
        Hn.bottomRightCorner(pw, pw) = W.transpose() * AW;
        Gn.bottomRightCorner(pw, pw) = W.transpose() * MW;
        auto grow = [&](Eigen::MatrixXd& Mat, const Eigen::MatrixXd& New) {
            Eigen::MatrixXd tmp(n, q + pw);
            tmp.leftCols(q) = Mat;
            tmp.rightCols(pw) = New;
            Mat = std::move(tmp);
        };
        grow(V, W);
        grow(AV, AW);
        grow(MV, MW);
        H = std::move(Hn);
        G = std::move(Gn);
        return true;
    };

    {
        Eigen::MatrixXd W0(n, b);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < n; ++i) W0(i, j) = unif(rng);
        if (!append_block(W0)) throw SpecgapError("eigensolver could not build an initial basis");
    }

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        res.iterations = iter + 1;
        const int q = static_cast<int>(V.cols());
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rr(H, G);
        if (rr.info() != Eigen::Success) throw SpecgapError("Rayleigh-Ritz projection failed");
        const Eigen::VectorXd theta = rr.eigenvalues();
        const Eigen::MatrixXd Y = rr.eigenvectors();

        int below = 0;
        while (below < q && theta[below] < cut) ++below;

        if (below >= m) {
            Eigen::MatrixXd X = V * Y.leftCols(m);
            Eigen::MatrixXd AX = A * X, MX = M * X;
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                const double rn = (AX.col(i) - theta[i] * MX.col(i)).norm();
                const double dn = MX.col(i).norm();
                if (!(dn > 0) || rn > opts.tol * (1 + std::abs(theta[i])) * std::max(dn, 1e-300))
                    ok = false;
            }
            if (ok && below == m) {
                res.values.assign(theta.data(), theta.data() + m);
                res.vectors = std::move(X);
                return res;
            }
        }

        const int want_cols = std::min(p, q);
        Eigen::MatrixXd Xk = V * Y.leftCols(want_cols);
        Eigen::MatrixXd Wnew = F.solve(M * Xk);

        if (q + want_cols > cap) {
            const int r = std::min(keep, q);
            const Eigen::MatrixXd Yr = Y.leftCols(r);
            V = V * Yr;
            AV = AV * Yr;
            MV = MV * Yr;
            H = Yr.transpose() * H * Yr;
            G = Yr.transpose() * G * Yr;
        }
        if (!append_block(Wnew)) {
            Eigen::MatrixXd R(n, p);
            for (int j = 0; j < p; ++j)
                for (int i = 0; i < n; ++i) R(i, j) = unif(rng);
            if (!append_block(R))
                throw SpecgapError("eigensolver basis expansion stalled");
        }
    }
    throw SpecgapError("eigensolver failed to converge to " + std::to_string(m) +
                       " eigenvalues below " + fmt17(mu));
}

// The k lowest pencil eigenvalues, found by bracketing a cutoff whose
// inertia reaches k and delegating to eigs_below. Multiplicity jumps can
// make an exact count-k cutoff unreachable; the bisection then settles on a
// slightly larger count and the list is truncated.
inline SpectralResult eigs_lowest(const SpMat& A, const SpMat& M, int k,
                                  const SolverOptions& opts = {}) {
    SpectralResult res;
    const int n = static_cast<int>(A.rows());
    if (k <= 0 || n == 0) {
        res.vectors.resize(n, 0);
        return res;
    }
    if (k > n) throw SpecgapError("requested more eigenvalues than free unknowns");

    if (n <= opts.dense_cutoff && !opts.force_iterative) {
        Eigen::MatrixXd Ad(A), Md(M);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ad, Md);
        if (ges.info() != Eigen::Success) throw SpecgapError("dense generalized eigensolver failed");
        res.values.assign(ges.eigenvalues().data(), ges.eigenvalues().data() + k);
        res.vectors = ges.eigenvectors().leftCols(k);
        res.used_dense = true;
        return res;
    }

    double hi = 1, step = 1;
    for (int guard = 0;; ++guard) {
        if (guard > 200) throw SpecgapError("failed to bracket the requested eigenvalue count from above");
        if (inertia_count(A, M, hi).count >= k) break;
        step *= 2;
        hi += step;
    }
    double lo = std::min(0.0, hi - 1);
    step = 1;
    for (int guard = 0;; ++guard) {
        if (guard > 200) throw SpecgapError("failed to bracket the requested eigenvalue count from below");
        if (inertia_count(A, M, lo).count < k) break;
        step *= 2;
        lo -= step;
    }
    int count_hi = inertia_count(A, M, hi).count;
    for (int it = 0; it < 200 && count_hi > k && hi - lo > 1e-9 * (1 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const int cm = inertia_count(A, M, mid).count;
        if (cm >= k) {
            hi = mid;
            count_hi = cm;
        } else {
            lo = mid;
        }
    }
    SpectralResult all = eigs_below(A, M, hi, opts);
    if (static_cast<int>(all.values.size()) < k)
        throw SpecgapError("eigenvalue bracketing lost the requested count");
    res.values.assign(all.values.begin(), all.values.begin() + k);
    res.vectors = all.vectors.leftCols(k);
    res.used_dense = all.used_dense;
    res.iterations = all.iterations;
    return res;
}

// Chain-merge clustering of an ascending eigenvalue list: consecutive values
// within tol_scale * (1 + |value|) belong to one cluster. Returns (mean,
// multiplicity) per cluster.
inline std::vector<std::pair<double, int>> cluster_eigenvalues(const std::vector<double>& vals,
                                                               double tol_scale = 1e-8) {
    std::vector<std::pair<double, int>> out;
    std::size_t i = 0;
    while (i < vals.size()) {
        double sum = vals[i];
        std::size_t j = i + 1;
        while (j < vals.size() && vals[j] - vals[j - 1] <= tol_scale * (1 + std::abs(vals[j]))) {
            sum += vals[j];
            ++j;
        }
        out.emplace_back(sum / static_cast<double>(j - i), static_cast<int>(j - i));
        i = j;
    }
    return out;
}

} // namespace specgap
