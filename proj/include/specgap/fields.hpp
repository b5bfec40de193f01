#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specgap/common.hpp"

namespace specgap {

// Smooth compactly supported bump: height * (1 - (|x-c|/radius)^2)^3 inside
// |x-c| < radius, zero outside. C^2, so barycenter quadrature stays second
// order; strictly positive on every ball strictly inside the support.
struct BallBump {
    Eigen::Vector2d center{0, 0};
    double radius = 0;
    double height = 0;

    double operator()(const Eigen::Vector2d& x) const {
        if (radius <= 0 || height == 0) return 0;
        const double t2 = (x - center).squaredNorm() / (radius * radius);
        if (t2 >= 1) return 0;
        const double s = 1 - t2;
        return height * s * s * s;
    }
};

// Potential V as a sum of primitive terms. Every term is bounded on the
// truncated domain by construction (the radial power tail is capped inside
// its cap radius to stay in L^inf).
struct PotentialSpec {
    struct Term {
        enum class Kind { Zero, Constant, RadialPower, RadialWell, Bump } kind = Kind::Zero;
        double c0 = 0;                             // constant offset
        double alpha = 0, eps = 0, cap_radius = 0; // radial power: -alpha |x|^(-2+eps)
        double depth = 0, ra = 0, rb = 0;          // radial well: -depth on ra <= |x| <= rb
        BallBump bump;
    };
    std::vector<Term> terms;

    static PotentialSpec zero() { return {}; }

    static PotentialSpec constant(double c) {
        Term t;
        t.kind = Term::Kind::Constant;
        t.c0 = c;
        return {{t}};
    }

    static PotentialSpec radial_well(double depth, double ra, double rb) {
        if (!(depth > 0 && ra >= 0 && rb > ra))
            throw SpecgapError("potential: radial_well needs depth > 0 and 0 <= ra < rb");
        Term t;
        t.kind = Term::Kind::RadialWell;
        t.depth = depth;
        t.ra = ra;
        t.rb = rb;
        return {{t}};
    }

    static PotentialSpec radial_power(double alpha, double eps, double cap_radius) {
        if (!(alpha > 0 && eps > 0 && cap_radius > 0))
            throw SpecgapError("potential: radial_power needs alpha > 0, eps > 0, cap_radius > 0");
        Term t;
        t.kind = Term::Kind::RadialPower;
        t.alpha = alpha;
        t.eps = eps;
        t.cap_radius = cap_radius;
        return {{t}};
    }

    static PotentialSpec ball_bump(const Eigen::Vector2d& center, double radius, double height) {
        if (!(radius > 0)) throw SpecgapError("potential: ball_bump needs radius > 0");
        Term t;
        t.kind = Term::Kind::Bump;
        t.bump = {center, radius, height};
        return {{t}};
    }

    PotentialSpec operator+(const PotentialSpec& other) const {
        PotentialSpec sum = *this;
        sum.terms.insert(sum.terms.end(), other.terms.begin(), other.terms.end());
        return sum;
    }

    double operator()(const Eigen::Vector2d& x) const {
        double v = 0;
        for (const auto& t : terms) {
            switch (t.kind) {
                case Term::Kind::Zero: break;
                case Term::Kind::Constant:
                    v += t.c0;
                    break;
                case Term::Kind::RadialWell: {
                    const double r = x.norm();
                    if (r >= t.ra && r <= t.rb) v -= t.depth;
                    break;
                }
                case Term::Kind::RadialPower: {
                    const double r = std::max(x.norm(), t.cap_radius);
                    v -= t.alpha * std::pow(r, -2.0 + t.eps);
                    break;
                }
                case Term::Kind::Bump:
                    v += t.bump(x);
                    break;
            }
        }
        return v;
    }

    // Radial configurations (no off-center bumps) admit the 1D oracle.
    bool is_radial() const {
        for (const auto& t : terms)
            if (t.kind == Term::Kind::Bump && t.bump.center.norm() > 0) return false;
        return true;
    }

    double radial_value(double r) const { return (*this)(Eigen::Vector2d{r, 0}); }
};

// Symmetric 2x2 coefficient field a(x) = base + profile(x) * bump_gain with a
// declared ellipticity constant. Covers identity, scaled, and locally
// perturbed fields; symmetry holds by construction.
struct CoefficientField {
    Eigen::Matrix2d base = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d bump_gain = Eigen::Matrix2d::Zero();
    BallBump bump;
    double ellipticity_constant = 1.0;

    static CoefficientField identity() { return {}; }

    static CoefficientField scaled_identity(double s) {
        CoefficientField f;
        f.base = s * Eigen::Matrix2d::Identity();
        f.ellipticity_constant = s;
        return f;
    }

    // a(x) = (1 + gain * profile(x)) * I with profile the unit-height bump.
    static CoefficientField isotropic_bump(const Eigen::Vector2d& center, double radius, double gain) {
        CoefficientField f;
        f.bump = {center, radius, 1.0};
        f.bump_gain = gain * Eigen::Matrix2d::Identity();
        f.ellipticity_constant = std::min(1.0, 1.0 + gain);
        return f;
    }

    Eigen::Matrix2d operator()(const Eigen::Vector2d& x) const {
        return base + bump(x) * bump_gain;
    }
};

// One elliptic operator's data: diffusion matrix field plus scalar potential.
struct FieldPair {
    CoefficientField a;
    PotentialSpec V;
};

struct StrictBall {
    Eigen::Vector2d center{0, 0};
    double radius = 0;
    enum class Condition { ScalarStrict, MatrixInvertible } condition = Condition::ScalarStrict;
};

struct OrderingWitness {
    bool pointwise_psd = false;    // a2 - a1 PSD at every sampled point
    bool pointwise_scalar = false; // V2 - V1 >= 0 at every sampled point
    std::optional<StrictBall> strict_ball;
};

// Probes ellipticity xi^T a xi >= E |xi|^2 along the fixed unit-direction set.
inline bool check_ellipticity(const CoefficientField& f, const std::vector<Eigen::Vector2d>& points) {
    const double s = 1.0 / std::sqrt(2.0);
    const Eigen::Vector2d dirs[4] = {{1, 0}, {0, 1}, {s, s}, {s, -s}};
    for (const auto& x : points) {
        const Eigen::Matrix2d a = f(x);
        if (std::abs(a(0, 1) - a(1, 0)) > 1e-12 * (1 + a.norm()))
            throw SpecgapError("coefficient field not symmetric at (" + fmt17(x.x()) + ", " + fmt17(x.y()) + ")");
        for (const auto& d : dirs)
            if (d.dot(a * d) < f.ellipticity_constant - 1e-12 * (1 + a.norm())) return false;
    }
    return true;
}

// Pointwise ordering of two operator coefficient sets at the quadrature
// points. PSD of the 2x2 difference is decided by trace and determinant
// (exact in 2D); tolerances are relative to the local field magnitude. A
// declared strict ball is verified at every sampled point strictly inside it
// and rejected (with the failing point) if strictness fails there.
inline OrderingWitness check_ordering(const FieldPair& f1, const FieldPair& f2,
                                      const std::vector<Eigen::Vector2d>& quad_points,
                                      std::optional<StrictBall> declared_ball = std::nullopt) {
    OrderingWitness w;
    w.pointwise_psd = true;
    w.pointwise_scalar = true;
    for (const auto& x : quad_points) {
        const Eigen::Matrix2d d = f2.a(x) - f1.a(x);
        const double mag_a = 1 + f1.a(x).norm() + f2.a(x).norm();
        const double tol_a = 1e-12 * mag_a;
        if (d.trace() < -tol_a || d.determinant() < -tol_a * mag_a) w.pointwise_psd = false;
        const double v1 = f1.V(x), v2 = f2.V(x);
        if (v2 - v1 < -1e-12 * (1 + std::abs(v1) + std::abs(v2))) w.pointwise_scalar = false;
    }
    if (declared_ball) {
        for (const auto& x : quad_points) {
            if ((x - declared_ball->center).norm() >= declared_ball->radius) continue;
            if (declared_ball->condition == StrictBall::Condition::ScalarStrict) {
                const double dv = f2.V(x) - f1.V(x);
                if (!(dv > 1e-12 * (1 + std::abs(f1.V(x)) + std::abs(f2.V(x)))))
                    throw SpecgapError("strict ball fails the scalar strictness check at (" +
                                       fmt17(x.x()) + ", " + fmt17(x.y()) + ")");
            } else {
                const Eigen::Matrix2d d = f2.a(x) - f1.a(x);
                const double tol = 1e-12 * (1 + f1.a(x).norm() + f2.a(x).norm());
                // PSD and invertible in 2D is positive definite: trace and det positive.
                if (!(d.trace() > tol && d.determinant() > tol * tol))
                    throw SpecgapError("strict ball fails the matrix invertibility check at (" +
                                       fmt17(x.x()) + ", " + fmt17(x.y()) + ")");
            }
        }
        w.strict_ball = declared_ball;
    }
    return w;
}

} // namespace specgap
