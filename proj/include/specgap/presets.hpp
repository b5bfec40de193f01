#pragma once

#include <string>
#include <vector>

#include "specgap/config.hpp"

namespace specgap {

struct PresetInfo {
    std::string name;
    std::string description;
};

inline std::vector<PresetInfo> preset_list() {
    return {
        {"neumann-vs-dirichlet-well",
         "Radial well behind a disk obstacle: strict Neumann-versus-Dirichlet eigenvalue "
         "comparison with open/closed counting checks, refinement-certified gaps, boundary-trace "
         "evidence, and a 1D radial-oracle crosscheck."},
        {"mixed-robin-halfcircle",
         "Robin window on half the obstacle circle (alpha = 1), Dirichlet on the rest: the "
         "mixed-versus-Dirichlet strict comparison whose strictness rests on nonvanishing "
         "boundary traces (unique continuation)."},
        {"slow-decay",
         "Slowly decaying attractive tail -r^(-3/2): the number of Dirichlet eigenvalues below "
         "-1e-3 is nondecreasing in the truncation radius and strictly grows from R=8 to R=64, "
         "the truncated shadow of infinitely many bound states."},
        {"coefficient-potential-bump",
         "Ordered potentials under one Dirichlet realization: adding a smooth nonnegative bump "
         "supported on a ball strictly raises every low eigenvalue; strictness certified through "
         "the scalar-difference condition on a declared ball."},
        {"coefficient-matrix-bump",
         "Ordered matrix coefficients under one Dirichlet realization: an isotropic diffusion "
         "enhancement on a ball gives strict eigenvalue growth via the invertible-difference "
         "condition on a declared ball."},
        {"zero-potential-vacuous",
         "Zero-potential control: no eigenvalues below the reporting ceiling on either side, so "
         "every comparison verdict is vacuous and the run exits cleanly."},
    };
}

inline std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& p : preset_list()) out.push_back(p.name);
    return out;
}

inline ExperimentConfig make_preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    cfg.output_dir = "out/" + name;

    if (name == "neumann-vs-dirichlet-well") {
        cfg.kind = ExperimentConfig::Kind::DirichletVsNeumann;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 12.0;
        cfg.domain.grading = 2.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 16;
        cfg.domain.radial_anchors = {2.0};
        cfg.levels = {0, 1, 2};
        cfg.bc = BoundarySpec::neumann();
        cfg.f1.V = PotentialSpec::radial_well(8.0, 1.0, 2.0);
        cfg.ceiling = -0.05;
        cfg.certify_gaps = true;
        cfg.sensitivity = true;
        cfg.oracle_enabled = true;
        cfg.oracle_n_r = 2048;
        cfg.oracle_m_max = 8;
        return cfg;
    }
    if (name == "mixed-robin-halfcircle") {
        cfg.kind = ExperimentConfig::Kind::DirichletVsMixed;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 12.0;
        cfg.domain.grading = 2.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 16;
        cfg.domain.radial_anchors = {2.0};
        cfg.levels = {0, 1, 2};
        cfg.bc = BoundarySpec::robin_full(1.0);
        cfg.bc.omega = {{0.0, kPi}};
        cfg.f1.V = PotentialSpec::radial_well(8.0, 1.0, 2.0);
        cfg.ceiling = -0.05;
        cfg.certify_gaps = true;
        cfg.sensitivity = true;
        return cfg;
    }
    if (name == "slow-decay") {
        cfg.kind = ExperimentConfig::Kind::DirichletVsNeumann;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 8.0;
        cfg.domain.grading = 2.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 8;
        cfg.levels = {1};
        cfg.radii = {8.0, 16.0, 32.0, 64.0};
        cfg.bc = BoundarySpec::neumann();
        cfg.f1.V = PotentialSpec::radial_power(1.0, 0.5, 1.0);
        cfg.ceiling = -1e-3;
        cfg.probes = {-1e-3};
        cfg.certify_gaps = false;
        cfg.count_growth_check = true;
        return cfg;
    }
    if (name == "coefficient-potential-bump") {
        cfg.kind = ExperimentConfig::Kind::CoefficientPair;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 8.0;
        cfg.domain.grading = 1.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 12;
        cfg.domain.radial_anchors = {2.0};
        cfg.levels = {1, 2, 3};
        cfg.bc = BoundarySpec::dirichlet();
        cfg.f1.V = PotentialSpec::radial_well(8.0, 1.0, 2.0);
        cfg.f2.V = cfg.f1.V + PotentialSpec::ball_bump({1.5, 0.0}, 0.3, 1.0);
        StrictBall sb;
        sb.center = {1.5, 0.0};
        sb.radius = 0.15;
        sb.condition = StrictBall::Condition::ScalarStrict;
        cfg.strict_ball = sb;
        cfg.ceiling = -0.05;
        cfg.certify_gaps = true;
        return cfg;
    }
    if (name == "coefficient-matrix-bump") {
        cfg.kind = ExperimentConfig::Kind::CoefficientPair;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 8.0;
        cfg.domain.grading = 1.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 12;
        cfg.domain.radial_anchors = {2.0};
        cfg.levels = {1, 2, 3};
        cfg.bc = BoundarySpec::dirichlet();
        cfg.f1.V = PotentialSpec::radial_well(8.0, 1.0, 2.0);
        cfg.f2.V = cfg.f1.V;
        cfg.f2.a = CoefficientField::isotropic_bump({1.5, 0.0}, 0.5, 0.5);
        StrictBall sb;
        sb.center = {1.5, 0.0};
        sb.radius = 0.25;
        sb.condition = StrictBall::Condition::MatrixInvertible;
        cfg.strict_ball = sb;
        cfg.ceiling = -0.05;
        cfg.certify_gaps = true;
        return cfg;
    }
    if (name == "zero-potential-vacuous") {
        cfg.kind = ExperimentConfig::Kind::DirichletVsNeumann;
        cfg.domain.obstacle = DiskObstacle{1.0};
        cfg.domain.trunc_radius = 8.0;
        cfg.domain.grading = 1.0;
        cfg.domain.base_ntheta = 16;
        cfg.domain.base_nr = 8;
        cfg.levels = {0, 1};
        cfg.bc = BoundarySpec::neumann();
        cfg.f1.V = PotentialSpec::zero();
        cfg.ceiling = -0.05;
        cfg.certify_gaps = true;
        return cfg;
    }
    throw SpecgapError("unknown preset '" + name + "'");
}

inline bool is_preset(const std::string& name) {
    for (const auto& p : preset_list())
        if (p.name == name) return true;
    return false;
}

} // namespace specgap
