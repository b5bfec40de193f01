#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "specgap/comparison.hpp"
#include "specgap/config.hpp"
#include "specgap/radial_oracle.hpp"

namespace specgap {

struct RadiusRun {
    double radius = 0;
    GapCertificate cert;
    std::optional<double> sensitivity_radius;
    std::optional<double> sensitivity_gap; // leading gap on the finest level at the enlarged radius
    std::optional<CrosscheckReport> crosscheck_weak;
    std::optional<CrosscheckReport> crosscheck_strong;
    std::vector<RadialEig> oracle_weak, oracle_strong;
    int growth_count = -1; // strong-side open count at the primary probe
};

struct RunResult {
    ExperimentConfig cfg;
    std::vector<RadiusRun> radius_runs;
    bool count_growth_checked = false;
    bool count_growth_ok = true;
    std::vector<int> growth_counts;
    int exit_code = 0;
    std::vector<std::string> artifacts;
};

namespace detail {

inline std::vector<Mesh> build_level_meshes(const ExperimentConfig& cfg, double radius) {
    std::vector<Mesh> meshes;
    for (int level : cfg.levels) {
        DomainSpec d = cfg.domain;
        d.trunc_radius = radius;
        d.refinement_level = level;
        Mesh mesh = build_mesh(d);
        if (cfg.kind != ExperimentConfig::Kind::CoefficientPair)
            mesh = tag_boundary(std::move(mesh), cfg.bc);
        meshes.push_back(std::move(mesh));
    }
    return meshes;
}

inline GapCertificate run_one_comparison(const ExperimentConfig& cfg,
                                         const std::vector<Mesh>& meshes,
                                         const std::vector<int>& level_ids, bool certify) {
    if (cfg.kind == ExperimentConfig::Kind::CoefficientPair)
        return compare_coefficient_pairs(meshes, level_ids, cfg.f1, cfg.f2, cfg.probes,
                                         cfg.ceiling, cfg.solver, certify, cfg.strict_ball);
    return compare_dirichlet_vs_mixed(meshes, level_ids, cfg.f1, cfg.bc, cfg.probes, cfg.ceiling,
                                      cfg.solver, certify);
}

inline RadialProblem radial_problem_for(const ExperimentConfig& cfg, double radius, bool weak_side) {
    RadialProblem p;
    p.r0 = std::get<DiskObstacle>(cfg.domain.obstacle).radius;
    p.R = radius;
    p.V = cfg.f1.V;
    p.n_r = cfg.oracle_n_r;
    p.m_max = cfg.oracle_m_max;
    if (weak_side) {
        p.inner = RadialProblem::Inner::Robin;
        p.alpha = cfg.bc.robin_alpha;
    } else {
        p.inner = RadialProblem::Inner::Dirichlet;
    }
    return p;
}

inline const char* extrap_status_name(ExtrapStatus s) {
    switch (s) {
        case ExtrapStatus::Ok: return "ok";
        case ExtrapStatus::Constant: return "constant";
        case ExtrapStatus::Inconclusive: return "inconclusive";
        case ExtrapStatus::Insufficient: return "insufficient";
    }
    return "?";
}

} // namespace detail

// Executes one configuration: per truncation radius, the level sequence is
// meshed, compared, and certified; optional extras are the enlarged-radius
// sensitivity gap, the radial-oracle crosscheck, and the count-growth check
// across radii. Artifacts land in cfg.output_dir. Exit code 0 means every
// verdict is "holds" or "vacuous" and, when requested, counts grow.
inline RunResult run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    cfg.validate();
    RunResult result;
    result.cfg = cfg;

    for (double radius : cfg.effective_radii()) {
        RadiusRun rr;
        rr.radius = radius;
        log << "[" << cfg.name << "] radius " << fmt17(radius) << ": building "
            << cfg.levels.size() << " mesh level(s)\n";
        const std::vector<Mesh> meshes = detail::build_level_meshes(cfg, radius);
        rr.cert = detail::run_one_comparison(cfg, meshes, cfg.levels, cfg.certify_gaps);
        rr.cert.summary = cfg.name + " @ R=" + fmt17(radius);
        log << "[" << cfg.name << "] radius " << fmt17(radius) << ": verdict "
            << overall_name(rr.cert.overall) << "\n";

        if (cfg.count_growth_check && !cfg.probes.empty()) {
            const auto& counts = rr.cert.levels.back().counts;
            for (const auto& cc : counts)
                if (cc.probe == cfg.probes.front()) rr.growth_count = cc.n_strong_open;
        }

        if (cfg.sensitivity) {
            const double r2 = 1.5 * radius;
            ExperimentConfig scfg = cfg;
            scfg.levels = {cfg.levels.back()};
            scfg.sensitivity = false;
            const std::vector<Mesh> smesh = detail::build_level_meshes(scfg, r2);
            const GapCertificate scert =
                detail::run_one_comparison(scfg, smesh, scfg.levels, /*certify=*/false);
            rr.sensitivity_radius = r2;
            if (!scert.levels.empty() && !scert.levels.front().rows.empty())
                rr.sensitivity_gap = scert.levels.front().rows.front().gap;
            log << "[" << cfg.name << "] sensitivity at R=" << fmt17(r2) << ": "
                << (rr.sensitivity_gap ? fmt17(*rr.sensitivity_gap) : std::string("no gap rows"))
                << "\n";
        }

        if (cfg.oracle_enabled) {
            const RadialProblem pw = detail::radial_problem_for(cfg, radius, true);
            const RadialProblem ps = detail::radial_problem_for(cfg, radius, false);
            rr.oracle_weak = radial_eigs(pw, cfg.ceiling);
            rr.oracle_strong = radial_eigs(ps, cfg.ceiling);
            const auto& fin = rr.cert.levels.back();
            rr.crosscheck_weak = oracle_crosscheck(fin.weak_values, rr.oracle_weak, cfg.ceiling, 1e-3);
            rr.crosscheck_strong =
                oracle_crosscheck(fin.strong_values, rr.oracle_strong, cfg.ceiling, 1e-3);
            log << "[" << cfg.name << "] oracle crosscheck: weak "
                << (rr.crosscheck_weak->ok ? "pass" : "FAIL") << ", dirichlet "
                << (rr.crosscheck_strong->ok ? "pass" : "FAIL") << "\n";
        }
        result.radius_runs.push_back(std::move(rr));
    }

    if (cfg.count_growth_check) {
        result.count_growth_checked = true;
        for (const auto& rr : result.radius_runs) result.growth_counts.push_back(rr.growth_count);
        for (std::size_t i = 1; i < result.growth_counts.size(); ++i)
            if (result.growth_counts[i] < result.growth_counts[i - 1]) result.count_growth_ok = false;
        if (result.growth_counts.size() >= 2 &&
            result.growth_counts.back() <= result.growth_counts.front())
            result.count_growth_ok = false;
        if (result.growth_counts.empty()) result.count_growth_ok = false;
    }

    bool all_ok = true;
    for (const auto& rr : result.radius_runs)
        if (rr.cert.overall != Overall::Holds && rr.cert.overall != Overall::Vacuous) all_ok = false;
    if (result.count_growth_checked && !result.count_growth_ok) all_ok = false;
    result.exit_code = all_ok ? 0 : 1;
    return result;
}

namespace detail {

inline void write_report(std::ostream& os, const RunResult& r) {
    const ExperimentConfig& cfg = r.cfg;
    os << "experiment: " << cfg.name << "\n";
    os << "kind: ";
    switch (cfg.kind) {
        case ExperimentConfig::Kind::DirichletVsNeumann: os << "dirichlet_vs_neumann"; break;
        case ExperimentConfig::Kind::DirichletVsMixed: os << "dirichlet_vs_mixed"; break;
        case ExperimentConfig::Kind::CoefficientPair: os << "coefficient_pair"; break;
    }
    os << "\nceiling: " << fmt17(cfg.ceiling) << "\n";
    os << "weak side: "
       << (cfg.kind == ExperimentConfig::Kind::CoefficientPair
               ? "operator 1 (smaller form)"
               : "natural/Robin realization (larger form domain)")
       << "\n";
    for (const auto& rr : r.radius_runs) {
        os << "\n=== truncation radius " << fmt17(rr.radius) << " ===\n";
        os << "\n-- exact discrete invariants --\n";
        os << "single-mesh ordering (gap >= -1e-10 for every computed k): "
           << (rr.cert.exact_ordering_holds ? "pass" : "FAIL") << "\n";
        os << "counting inequality (weak open count >= strong closed count at every probe): "
           << (rr.cert.counting_holds ? "pass" : "FAIL") << "\n";
        if (rr.cert.trace_checked) {
            os << "boundary trace floor (every weak eigenvector trace norm > 1e-6): "
               << (rr.cert.traces_ok ? "pass" : "FAIL") << "\n";
        } else {
            os << "boundary trace floor: not applicable (no natural boundary part)\n";
        }
        for (const auto& lev : rr.cert.levels) {
            os << "level " << lev.level << ": h = " << fmt17(lev.h) << ", free dofs weak/strong = "
               << lev.n_free_weak << "/" << lev.n_free_strong;
            if (lev.trace_norms.empty()) {
                os << "\n";
            } else {
                os << ", min trace norm = " << fmt17(lev.min_trace_norm) << "\n";
            }
            for (const auto& cc : lev.counts)
                os << "  probe " << fmt17(cc.probe) << ": weak open " << cc.n_weak_open
                   << " >= strong closed " << cc.n_strong_closed << " : "
                   << (cc.holds ? "pass" : "FAIL") << "\n";
        }
        os << "\n-- strictness verdicts (numerical, with extrapolation error bars) --\n";
        if (rr.cert.per_k.empty()) {
            os << "no eigenvalues below the ceiling on the strong side: vacuous\n";
        }
        for (const auto& v : rr.cert.per_k) {
            os << "k = " << v.k << ": weak " << fmt17(v.lambda_weak) << ", strong "
               << fmt17(v.lambda_strong) << ", gap " << fmt17(v.gap);
            os << ", extrapolation " << extrap_status_name(v.ex.status);
            if (v.ex.status == ExtrapStatus::Ok)
                os << " (limit " << fmt17(v.ex.limit) << ", err " << fmt17(v.ex.error_estimate)
                   << ", order " << fmt17(v.ex.order_estimate) << ")";
            os << ", monotone " << (v.monotone ? "yes" : "no") << ", strict "
               << (v.strict ? "yes" : "no") << "\n";
        }
        if (rr.sensitivity_radius) {
            os << "\ntruncation sensitivity (reported, non-gating): leading gap at R = "
               << fmt17(rr.radius) << " is "
               << (rr.cert.per_k.empty() ? std::string("n/a") : fmt17(rr.cert.per_k.front().gap))
               << ", at R = " << fmt17(*rr.sensitivity_radius) << " is "
               << (rr.sensitivity_gap ? fmt17(*rr.sensitivity_gap) : std::string("n/a")) << "\n";
        }
        if (rr.crosscheck_weak) {
            os << "\nradial oracle crosscheck (rel tol 1e-3):\n";
            auto dump = [&os](const char* side, const CrosscheckReport& rep) {
                os << "  " << side << ": " << (rep.ok ? "pass" : "FAIL") << " (fem " << rep.n_fem
                   << " vs oracle " << rep.n_oracle << ")\n";
                for (const auto& e : rep.rows)
                    os << "    k=" << e.k << " fem " << fmt17(e.fem) << " oracle " << fmt17(e.oracle)
                       << " rel err " << fmt17(e.rel_err) << (e.ok ? "" : "  <-- mismatch") << "\n";
            };
            dump("weak side", *rr.crosscheck_weak);
            dump("dirichlet side", *rr.crosscheck_strong);
        }
        os << "\nverdict: " << overall_name(rr.cert.overall) << "\n";
    }
    if (r.count_growth_checked) {
        os << "\n=== eigenvalue count growth across radii ===\n";
        os << "strong-side open counts at probe " << fmt17(cfg.probes.front()) << ":";
        for (int c : r.growth_counts) os << " " << c;
        os << "\nnondecreasing and strictly larger at the last radius: "
           << (r.count_growth_ok ? "pass" : "FAIL") << "\n";
    }
    os << "\noverall exit: " << r.exit_code << "\n";
}

inline void write_summary(std::ostream& os, const RunResult& r) {
    const ExperimentConfig& cfg = r.cfg;
    os << "name = " << cfg.name << "\n";
    os << "exit_code = " << r.exit_code << "\n";
    os << "n_radii = " << r.radius_runs.size() << "\n";
    for (std::size_t i = 0; i < r.radius_runs.size(); ++i) {
        const auto& rr = r.radius_runs[i];
        const std::string p = "radius" + std::to_string(i) + ".";
        os << p << "radius = " << fmt17(rr.radius) << "\n";
        os << p << "verdict = " << overall_name(rr.cert.overall) << "\n";
        os << p << "ordering_holds = " << (rr.cert.exact_ordering_holds ? 1 : 0) << "\n";
        os << p << "counting_holds = " << (rr.cert.counting_holds ? 1 : 0) << "\n";
        os << p << "traces_ok = " << (rr.cert.traces_ok ? 1 : 0) << "\n";
        os << p << "k_max = " << rr.cert.per_k.size() << "\n";
        if (!rr.cert.per_k.empty()) {
            const auto& v = rr.cert.per_k.front();
            os << p << "k1_gap = " << fmt17(v.gap) << "\n";
            os << p << "k1_extrapolation = " << extrap_status_name(v.ex.status) << "\n";
            os << p << "k1_limit = " << fmt17(v.ex.limit) << "\n";
            os << p << "k1_error = " << fmt17(v.ex.error_estimate) << "\n";
            os << p << "k1_order = " << fmt17(v.ex.order_estimate) << "\n";
            os << p << "k1_strict = " << (v.strict ? 1 : 0) << "\n";
        }
        if (rr.sensitivity_gap) {
            os << p << "sensitivity_radius = " << fmt17(*rr.sensitivity_radius) << "\n";
            os << p << "sensitivity_gap = " << fmt17(*rr.sensitivity_gap) << "\n";
        }
        if (rr.crosscheck_weak) {
            os << p << "oracle_weak_ok = " << (rr.crosscheck_weak->ok ? 1 : 0) << "\n";
            os << p << "oracle_dirichlet_ok = " << (rr.crosscheck_strong->ok ? 1 : 0) << "\n";
        }
        if (rr.growth_count >= 0) os << p << "growth_count = " << rr.growth_count << "\n";
    }
    if (r.count_growth_checked) os << "count_growth_ok = " << (r.count_growth_ok ? 1 : 0) << "\n";
}

} // namespace detail

// Writes report.txt, summary.txt, and the CSV tables under cfg.output_dir.
// All numeric fields go through the fixed 17-significant-digit formatter, so
// rerunning the same configuration reproduces the files byte for byte.
inline void write_artifacts(RunResult& r) {
    namespace fs = std::filesystem;
    const fs::path dir(r.cfg.output_dir);
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name);
        if (!out) throw SpecgapError(std::string("cannot open output file ") + (dir / name).string());
        r.artifacts.push_back((dir / name).string());
        return out;
    };

    {
        auto os = open("report.txt");
        detail::write_report(os, r);
    }
    {
        auto os = open("summary.txt");
        detail::write_summary(os, r);
    }
    {
        auto os = open("gaps.csv");
        os << "radius,level,h,k,lambda_weak,lambda_strong,gap\n";
        for (const auto& rr : r.radius_runs)
            for (const auto& lev : rr.cert.levels)
                for (const auto& row : lev.rows)
                    os << fmt17(rr.radius) << "," << lev.level << "," << fmt17(lev.h) << ","
                       << row.k << "," << fmt17(row.lambda_weak) << "," << fmt17(row.lambda_strong)
                       << "," << fmt17(row.gap) << "\n";
    }
    {
        auto os = open("counts.csv");
        os << "radius,level,probe,n_weak_open,n_strong_closed,n_strong_open,holds\n";
        for (const auto& rr : r.radius_runs)
            for (const auto& lev : rr.cert.levels)
                for (const auto& cc : lev.counts)
                    os << fmt17(rr.radius) << "," << lev.level << "," << fmt17(cc.probe) << ","
                       << cc.n_weak_open << "," << cc.n_strong_closed << "," << cc.n_strong_open
                       << "," << (cc.holds ? 1 : 0) << "\n";
    }
    {
        auto os = open("traces.csv");
        os << "radius,level,index,trace_norm\n";
        for (const auto& rr : r.radius_runs)
            for (const auto& lev : rr.cert.levels)
                for (std::size_t i = 0; i < lev.trace_norms.size(); ++i)
                    os << fmt17(rr.radius) << "," << lev.level << "," << (i + 1) << ","
                       << fmt17(lev.trace_norms[i]) << "\n";
    }
    {
        auto os = open("extrapolation.csv");
        os << "radius,k,gap_finest,status,limit,error_estimate,order_estimate,monotone,strict\n";
        for (const auto& rr : r.radius_runs)
            for (const auto& v : rr.cert.per_k)
                os << fmt17(rr.radius) << "," << v.k << "," << fmt17(v.gap) << ","
                   << detail::extrap_status_name(v.ex.status) << "," << fmt17(v.ex.limit) << ","
                   << fmt17(v.ex.error_estimate) << "," << fmt17(v.ex.order_estimate) << ","
                   << (v.monotone ? 1 : 0) << "," << (v.strict ? 1 : 0) << "\n";
    }
    if (r.count_growth_checked) {
        auto os = open("counts_by_radius.csv");
        os << "radius,count\n";
        for (const auto& rr : r.radius_runs)
            os << fmt17(rr.radius) << "," << rr.growth_count << "\n";
    }
    if (r.cfg.oracle_enabled) {
        auto write_oracle = [&](const char* name, bool weak) {
            auto os = open(name);
            os << "m,index,eigenvalue,N_r\n";
            for (const auto& rr : r.radius_runs) {
                const auto& list = weak ? rr.oracle_weak : rr.oracle_strong;
                for (const auto& e : list)
                    os << e.m << "," << e.radial_index << "," << fmt17(e.value) << ","
                       << r.cfg.oracle_n_r << "\n";
            }
        };
        write_oracle("oracle_weak.csv", true);
        write_oracle("oracle_dirichlet.csv", false);
    }
}

} // namespace specgap
