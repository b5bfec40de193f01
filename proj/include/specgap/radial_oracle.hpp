#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specgap/common.hpp"
#include "specgap/fields.hpp"

namespace specgap {

// Independent 1D check for radially symmetric configurations. The substitution
// w = sqrt(r) u turns each angular mode m of the 2D operator into
//   -w'' + ((m^2 - 1/4)/r^2 + V(r)) w = lambda w   on (r0, R),
// discretized with P1 elements, lumped mass, exact overlap integrals for the
// piecewise-linear-in-profile potential terms and split 5-point Gauss for the
// smooth ones. The natural inner condition picks up 1/(2 r0) from the
// substitution on top of the Robin coefficient. None of the 2D assembly code
// is reused here.

struct RadialProblem {
    double r0 = 1;
    double R = 12;
    PotentialSpec V;
    enum class Inner { Dirichlet, Robin } inner = Inner::Dirichlet; // Robin with alpha = 0 is Neumann
    double alpha = 0;
    int n_r = 2048;
    int m_max = 8;             // starting angular mode bound, auto-raised up to 64
    bool centrifugal = true;   // disabled only by the transform self-test
};

struct RadialEig {
    double value = 0;
    int m = 0;
    int radial_index = 0; // 1-based within the mode
    int multiplicity = 1; // 2 for m >= 1
};

namespace detail {

inline constexpr double kGX[5] = {-0.906179845938664, -0.538469310105683, 0.0,
                                  0.538469310105683, 0.906179845938664};
inline constexpr double kGW[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                                  0.478628670499366, 0.236926885056189};

template <class F>
double gauss5(const F& f, double a, double b) {
    const double xm = (a + b) / 2, xr = (b - a) / 2;
    double s = 0;
    for (int i = 0; i < 5; ++i) s += kGW[i] * f(xm + xr * kGX[i]);
    return xr * s;
}

// 5-point Gauss split at the listed breakpoints, for integrands smooth
// between them.
template <class F>
double gauss5_split(const F& f, double a, double b, const std::vector<double>& kinks) {
    std::vector<double> pts{a};
    for (double k : kinks)
        if (k > a && k < b) pts.push_back(k);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double s = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += gauss5(f, pts[i], pts[i + 1]);
    return s;
}

// Exact integral over [a,b] intersect [ra,rb] of the product of two linear
// functions given by endpoint values on [a,b]; Simpson is exact for the
// quadratic integrand.
inline double linear_product_overlap(double a, double b, double ra, double rb, double fa0,
                                     double fa1, double fb0, double fb1) {
    const double lo = std::max(a, ra), hi = std::min(b, rb);
    if (hi <= lo) return 0;
    auto lin = [&](double v0, double v1, double x) { return v0 + (v1 - v0) * (x - a) / (b - a); };
    auto g = [&](double x) { return lin(fa0, fa1, x) * lin(fb0, fb1, x); };
    const double xm = (lo + hi) / 2;
    return (hi - lo) / 6 * (g(lo) + 4 * g(xm) + g(hi));
}

// Eigenvalues of one angular mode, ascending.
inline std::vector<double> radial_mode_eigs(const RadialProblem& p, int m) {
    const int N = p.n_r;
    const double dlt = (p.R - p.r0) / N;
    const int n = N + 1;
    Eigen::VectorXd Ad = Eigen::VectorXd::Zero(n), Ae = Eigen::VectorXd::Zero(n - 1);
    Eigen::VectorXd Md = Eigen::VectorXd::Zero(n);
    const double cent = p.centrifugal ? (static_cast<double>(m) * m - 0.25) : 0.0;

    for (int j = 0; j < N; ++j) {
        const double a = p.r0 + dlt * j, b = a + dlt;
        Ad[j] += 1 / dlt;
        Ad[j + 1] += 1 / dlt;
        Ae[j] -= 1 / dlt;
        Md[j] += dlt / 2;
        Md[j + 1] += dlt / 2;
        auto phi0 = [&](double x) { return (b - x) / dlt; };
        auto phi1 = [&](double x) { return (x - a) / dlt; };
        if (cent != 0) {
            auto qc = [&](double x) { return cent / (x * x); };
            Ad[j] += gauss5([&](double x) { return qc(x) * phi0(x) * phi0(x); }, a, b);
            Ad[j + 1] += gauss5([&](double x) { return qc(x) * phi1(x) * phi1(x); }, a, b);
            Ae[j] += gauss5([&](double x) { return qc(x) * phi0(x) * phi1(x); }, a, b);
        }
        for (const auto& t : p.V.terms) {
            switch (t.kind) {
                case PotentialSpec::Term::Kind::Zero:
                    break;
                case PotentialSpec::Term::Kind::Constant:
                    Ad[j] += t.c0 * linear_product_overlap(a, b, a, b, 1, 0, 1, 0);
                    Ad[j + 1] += t.c0 * linear_product_overlap(a, b, a, b, 0, 1, 0, 1);
                    Ae[j] += t.c0 * linear_product_overlap(a, b, a, b, 1, 0, 0, 1);
                    break;
                case PotentialSpec::Term::Kind::RadialWell:
                    Ad[j] += -t.depth * linear_product_overlap(a, b, t.ra, t.rb, 1, 0, 1, 0);
                    Ad[j + 1] += -t.depth * linear_product_overlap(a, b, t.ra, t.rb, 0, 1, 0, 1);
                    Ae[j] += -t.depth * linear_product_overlap(a, b, t.ra, t.rb, 1, 0, 0, 1);
                    break;
                case PotentialSpec::Term::Kind::RadialPower: {
                    auto f = [&](double x) { return -t.alpha * std::pow(std::max(x, t.cap_radius), -2.0 + t.eps); };
                    const std::vector<double> kinks{t.cap_radius};
                    Ad[j] += gauss5_split([&](double x) { return f(x) * phi0(x) * phi0(x); }, a, b, kinks);
                    Ad[j + 1] += gauss5_split([&](double x) { return f(x) * phi1(x) * phi1(x); }, a, b, kinks);
                    Ae[j] += gauss5_split([&](double x) { return f(x) * phi0(x) * phi1(x); }, a, b, kinks);
                    break;
                }
                case PotentialSpec::Term::Kind::Bump: {
                    auto f = [&](double x) { return t.bump(Eigen::Vector2d{x, 0}); };
                    const std::vector<double> kinks{t.bump.radius};
                    Ad[j] += gauss5_split([&](double x) { return f(x) * phi0(x) * phi0(x); }, a, b, kinks);
                    Ad[j + 1] += gauss5_split([&](double x) { return f(x) * phi1(x) * phi1(x); }, a, b, kinks);
                    Ae[j] += gauss5_split([&](double x) { return f(x) * phi0(x) * phi1(x); }, a, b, kinks);
                    break;
                }
            }
        }
    }

    int lo = 0, dim = 0;
    if (p.inner == RadialProblem::Inner::Dirichlet) {
        lo = 1;
        dim = N - 1;
    } else {
        Ad[0] += 1 / (2 * p.r0) + p.alpha;
        lo = 0;
        dim = N;
    }
    // Outer truncation is always essential: drop the last node.
    Eigen::VectorXd d(dim), e(dim - 1), s(dim);
    for (int i = 0; i < dim; ++i) s[i] = 1 / std::sqrt(Md[lo + i]);
    for (int i = 0; i < dim; ++i) d[i] = Ad[lo + i] * s[i] * s[i];
    for (int i = 0; i + 1 < dim; ++i) e[i] = Ae[lo + i] * s[i] * s[i + 1];

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SpecgapError("radial tridiagonal eigensolver failed");
    const Eigen::VectorXd vals = solver.eigenvalues();
    return std::vector<double>(vals.data(), vals.data() + vals.size());
}

} // namespace detail

// All radial-problem eigenvalues below mu across angular modes, ascending.
// Mode eigenvalues increase with m, so scanning stops at the first mode with
// nothing below mu; the mode bound is raised automatically if the starting
// bound is still producing eigenvalues.
inline std::vector<RadialEig> radial_eigs(const RadialProblem& p, double mu) {
    if (!(p.r0 > 0 && p.R > p.r0)) throw SpecgapError("radial oracle needs 0 < r0 < R");
    if (p.n_r < 8) throw SpecgapError("radial oracle needs n_r >= 8");
    if (!p.V.is_radial()) throw SpecgapError("radial oracle requires a radially symmetric potential");
    std::vector<RadialEig> out;
    int m_bound = std::max(p.m_max, 0);
    for (int m = 0;; ++m) {
        if (m > m_bound) {
            if (m_bound >= 64)
                throw SpecgapError("radial oracle: angular mode bound 64 still produced eigenvalues below mu");
            m_bound = std::min(2 * m_bound + 1, 64);
        }
        const std::vector<double> vals = detail::radial_mode_eigs(p, m);
        int count = 0;
        for (double v : vals) {
            if (v >= mu) break;
            ++count;
        }
        if (count > p.n_r / 2)
            throw SpecgapError("radial oracle resolution too low for this probe; increase n_r");
        for (int i = 0; i < count; ++i)
            out.push_back({vals[i], m, i + 1, m == 0 ? 1 : 2});
        if (count == 0) break;
    }
    std::sort(out.begin(), out.end(), [](const RadialEig& a, const RadialEig& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.m < b.m;
    });
    return out;
}

// Lowest eigenvalue over all modes (the 2D ground state).
inline double radial_ground_state(const RadialProblem& p) {
    const std::vector<double> m0 = detail::radial_mode_eigs(p, 0);
    if (m0.empty()) throw SpecgapError("radial oracle produced no eigenvalues");
    return m0.front();
}

struct CrosscheckEntry {
    int k = 0;
    double fem = 0;
    double oracle = 0;
    double rel_err = 0;
    bool ok = false;
};

struct CrosscheckReport {
    bool ok = false;
    int n_fem = 0;
    int n_oracle = 0;
    std::vector<CrosscheckEntry> rows;
};

// Matches the ascending 2D eigenvalue list against the multiplicity-expanded
// oracle list below the same cutoff. Agreement is relative with a unit
// floor; a count mismatch fails the report even if the matched prefix
// agrees.
inline CrosscheckReport oracle_crosscheck(const std::vector<double>& fem_values,
                                          const std::vector<RadialEig>& oracle, double mu,
                                          double rel_tol) {
    std::vector<double> orc;
    for (const auto& e : oracle)
        if (e.value < mu)
            for (int c = 0; c < e.multiplicity; ++c) orc.push_back(e.value);
    std::sort(orc.begin(), orc.end());

    CrosscheckReport rep;
    rep.n_fem = static_cast<int>(fem_values.size());
    rep.n_oracle = static_cast<int>(orc.size());
    const std::size_t n = std::min(fem_values.size(), orc.size());
    bool all_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        CrosscheckEntry e;
        e.k = static_cast<int>(i) + 1;
        e.fem = fem_values[i];
        e.oracle = orc[i];
        e.rel_err = std::abs(e.fem - e.oracle) / (1 + std::abs(e.oracle));
        e.ok = e.rel_err <= rel_tol;
        if (!e.ok) all_ok = false;
        rep.rows.push_back(e);
    }
    rep.ok = all_ok && rep.n_fem == rep.n_oracle;
    return rep;
}

} // namespace specgap
