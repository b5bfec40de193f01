#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "specgap/presets.hpp"
#include "specgap/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw specgap::SpecgapError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

specgap::ExperimentConfig load_target(const std::string& target) {
    if (specgap::is_preset(target)) return specgap::make_preset(target);
    return specgap::config_from_text(read_file(target));
}

int cmd_run(const std::string& target, const std::string& output_dir) {
    specgap::ExperimentConfig cfg;
    try {
        cfg = load_target(target);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
    } catch (const std::exception& e) {
        std::cerr << "stage config: " << e.what() << "\n";
        return 2;
    }
    specgap::RunResult result;
    try {
        result = specgap::run_experiment(cfg, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "stage solve: " << e.what() << "\n";
        return 3;
    }
    try {
        specgap::write_artifacts(result);
    } catch (const std::exception& e) {
        std::cerr << "stage output: " << e.what() << "\n";
        return 3;
    }
    for (const auto& path : result.artifacts) std::cout << "wrote " << path << "\n";
    for (const auto& rr : result.radius_runs)
        std::cout << "R = " << specgap::fmt17(rr.radius) << ": "
                  << specgap::overall_name(rr.cert.overall) << "\n";
    if (result.count_growth_checked)
        std::cout << "count growth: " << (result.count_growth_ok ? "pass" : "FAIL") << "\n";
    return result.exit_code;
}

int cmd_list_presets() {
    for (const auto& p : specgap::preset_list()) std::cout << p.name << "\n  " << p.description << "\n";
    return 0;
}

int cmd_export_mesh(const std::string& target, int level, double radius, const std::string& out,
                    const std::string& matrix_prefix) {
    specgap::ExperimentConfig cfg;
    try {
        cfg = load_target(target);
    } catch (const std::exception& e) {
        std::cerr << "stage config: " << e.what() << "\n";
        return 2;
    }
    try {
        specgap::DomainSpec d = cfg.domain;
        d.refinement_level = level;
        if (radius > 0) d.trunc_radius = radius;
        specgap::Mesh mesh = specgap::build_mesh(d);
        if (cfg.kind != specgap::ExperimentConfig::Kind::CoefficientPair)
            mesh = specgap::tag_boundary(std::move(mesh), cfg.bc);
        {
            std::ofstream os(out);
            if (!os) throw specgap::SpecgapError("cannot open '" + out + "'");
            specgap::write_mesh_text(mesh, os);
        }
        std::cout << "wrote " << out << " (" << mesh.vertices.size() << " vertices, "
                  << mesh.triangles.size() << " triangles, " << mesh.boundary_edges.size()
                  << " boundary edges)\n";
        if (!matrix_prefix.empty()) {
            const bool pair = cfg.kind == specgap::ExperimentConfig::Kind::CoefficientPair;
            specgap::AssembledSystem weak =
                pair ? specgap::assemble_system(mesh, cfg.f1, specgap::BoundarySpec::dirichlet(),
                                                specgap::ConstraintMode::Dirichlet)
                     : specgap::assemble_system(mesh, cfg.f1, cfg.bc,
                                                specgap::ConstraintMode::RobinMixed);
            specgap::AssembledSystem strong =
                pair ? specgap::assemble_system(mesh, cfg.f2, specgap::BoundarySpec::dirichlet(),
                                                specgap::ConstraintMode::Dirichlet)
                     : specgap::assemble_system(mesh, cfg.f1, cfg.bc,
                                                specgap::ConstraintMode::Dirichlet);
            auto dump = [&](const std::string& suffix, const specgap::SpMat& A) {
                const std::string path = matrix_prefix + suffix;
                std::ofstream os(path);
                if (!os) throw specgap::SpecgapError("cannot open '" + path + "'");
                specgap::write_matrix_coord(os, A);
                std::cout << "wrote " << path << " (" << A.rows() << "x" << A.cols() << ", "
                          << A.nonZeros() << " entries)\n";
            };
            dump("_weak_form.txt", weak.A);
            dump("_weak_mass.txt", weak.M);
            dump("_strong_form.txt", strong.A);
            dump("_strong_mass.txt", strong.M);
        }
    } catch (const std::exception& e) {
        std::cerr << "stage mesh: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int cmd_oracle(const std::string& target, const std::string& out_dir) {
    specgap::ExperimentConfig cfg;
    try {
        cfg = load_target(target);
        cfg.oracle_enabled = true; // the subcommand itself is the request
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "stage config: " << e.what() << "\n";
        return 2;
    }
    try {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        const double radius = cfg.effective_radii().front();
        auto write_side = [&](const char* name, bool weak) {
            const specgap::RadialProblem p = specgap::detail::radial_problem_for(cfg, radius, weak);
            const auto eigs = specgap::radial_eigs(p, cfg.ceiling);
            const fs::path path = fs::path(out_dir) / name;
            std::ofstream os(path);
            if (!os) throw specgap::SpecgapError("cannot open '" + path.string() + "'");
            os << "m,index,eigenvalue,N_r\n";
            for (const auto& e : eigs)
                os << e.m << "," << e.radial_index << "," << specgap::fmt17(e.value) << "," << p.n_r
                   << "\n";
            std::cout << "wrote " << path.string() << " (" << eigs.size() << " eigenvalues below "
                      << specgap::fmt17(cfg.ceiling) << ")\n";
        };
        write_side("oracle_weak.csv", true);
        write_side("oracle_dirichlet.csv", false);
    } catch (const std::exception& e) {
        std::cerr << "stage oracle: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue comparison experiments for Schroedinger operators on truncated "
                 "exterior domains: strict Robin/Neumann-vs-Dirichlet gaps, counting "
                 "inequalities, and coefficient-ordering comparisons."};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a preset or a config file and write artifacts");
    std::string run_target, run_output;
    run->add_option("config", run_target, "preset name or config file path")->required();
    run->add_option("--output-dir", run_output, "override the output directory");

    auto* lp = app.add_subcommand("list-presets", "List built-in presets");

    auto* em = app.add_subcommand("export-mesh", "Write a mesh (and optionally matrices) as text");
    std::string em_target, em_out = "mesh.txt", em_matrix;
    int em_level = 0;
    double em_radius = 0;
    em->add_option("config", em_target, "preset name or config file path")->required();
    em->add_option("--level", em_level, "refinement level (default 0)");
    em->add_option("--radius", em_radius, "override the truncation radius");
    em->add_option("--out", em_out, "mesh output path (default mesh.txt)");
    em->add_option("--matrix-prefix", em_matrix,
                   "also export form/mass matrices in coordinate text format under this prefix");

    auto* orc = app.add_subcommand("oracle", "Run the 1D radial oracle for a configuration");
    std::string orc_target, orc_out = "out/oracle";
    orc->add_option("config", orc_target, "preset name or config file path")->required();
    orc->add_option("--output-dir", orc_out, "output directory (default out/oracle)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_target, run_output);
    if (lp->parsed()) return cmd_list_presets();
    if (em->parsed()) return cmd_export_mesh(em_target, em_level, em_radius, em_out, em_matrix);
    if (orc->parsed()) return cmd_oracle(orc_target, orc_out);
    return 2;
}
