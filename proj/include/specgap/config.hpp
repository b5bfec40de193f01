#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specgap/comparison.hpp"
#include "specgap/fields.hpp"
#include "specgap/geometry.hpp"
#include "specgap/spectral.hpp"

namespace specgap {

// Flat key/value configuration text: one `section.key = value` per line,
// '#' starts a comment, blank lines ignored. The reader records line numbers
// for diagnostics and tracks key usage so unknown keys are rejected with
// their location.
class KVConfig {
  public:
    static KVConfig parse(const std::string& text) {
        KVConfig cfg;
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            const std::size_t eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw SpecgapError("config line " + std::to_string(lineno) +
                                   ": expected 'key = value', got '" + trimmed + "'");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw SpecgapError("config line " + std::to_string(lineno) + ": empty key");
            if (cfg.entries_.count(key))
                throw SpecgapError("config line " + std::to_string(lineno) + ": duplicate key '" +
                                   key + "' (first set on line " +
                                   std::to_string(cfg.entries_[key].line) + ")");
            cfg.entries_[key] = {value, lineno};
        }
        return cfg;
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string get_string(const std::string& key) const {
        return raw(key);
    }
    std::string get_string(const std::string& key, const std::string& dflt) const {
        return has(key) ? raw(key) : (touch(key), dflt);
    }

    double get_double(const std::string& key) const { return parse_double(key, raw(key)); }
    double get_double(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : (touch(key), dflt);
    }

    int get_int(const std::string& key) const { return parse_int(key, raw(key)); }
    int get_int(const std::string& key, int dflt) const {
        return has(key) ? get_int(key) : (touch(key), dflt);
    }

    bool get_bool(const std::string& key) const {
        const std::string v = raw(key);
        if (v == "true" || v == "yes" || v == "1") return true;
        if (v == "false" || v == "no" || v == "0") return false;
        throw SpecgapError(where(key) + ": cannot parse '" + v + "' as a boolean");
    }
    bool get_bool(const std::string& key, bool dflt) const {
        return has(key) ? get_bool(key) : (touch(key), dflt);
    }

    std::vector<double> get_double_list(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& tok : split_list(raw(key))) out.push_back(parse_double(key, tok));
        return out;
    }
    std::vector<double> get_double_list(const std::string& key, std::vector<double> dflt) const {
        return has(key) ? get_double_list(key) : (touch(key), dflt);
    }

    std::vector<int> get_int_list(const std::string& key) const {
        std::vector<int> out;
        for (const std::string& tok : split_list(raw(key))) out.push_back(parse_int(key, tok));
        return out;
    }
    std::vector<int> get_int_list(const std::string& key, std::vector<int> dflt) const {
        return has(key) ? get_int_list(key) : (touch(key), dflt);
    }

    // Keys present in the file but never requested by the schema.
    std::vector<std::pair<std::string, int>> unknown_keys() const {
        std::vector<std::pair<std::string, int>> out;
        for (const auto& [key, entry] : entries_)
            if (!accessed_.count(key)) out.emplace_back(key, entry.line);
        return out;
    }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

  private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, Entry> entries_;
    mutable std::set<std::string> accessed_;

    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }

    static std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    }

    const std::string& raw(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw SpecgapError("config: missing required key '" + key + "'");
        accessed_.insert(key);
        return it->second.value;
    }

    bool touch(const std::string& key) const {
        accessed_.insert(key);
        return true;
    }

    std::string where(const std::string& key) const {
        return "config line " + std::to_string(line_of(key)) + ": key '" + key + "'";
    }

    double parse_double(const std::string& key, const std::string& tok) const {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw SpecgapError(where(key) + ": cannot parse '" + tok + "' as a number");
        }
    }

    int parse_int(const std::string& key, const std::string& tok) const {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw SpecgapError(where(key) + ": cannot parse '" + tok + "' as an integer");
        }
    }
};

struct ExperimentConfig {
    std::string name = "custom";
    enum class Kind { DirichletVsNeumann, DirichletVsMixed, CoefficientPair } kind =
        Kind::DirichletVsNeumann;
    DomainSpec domain;
    BoundarySpec bc = BoundarySpec::neumann();
    FieldPair f1, f2;
    std::optional<StrictBall> strict_ball;
    std::vector<int> levels{0, 1, 2};
    std::vector<double> radii;  // empty means just the domain truncation radius
    std::vector<double> probes; // empty means the strong side's own eigenvalues
    double ceiling = -0.05;
    SolverOptions solver;
    bool certify_gaps = true;
    bool sensitivity = false;
    bool count_growth_check = false;
    bool oracle_enabled = false;
    int oracle_n_r = 2048;
    int oracle_m_max = 8;
    std::string output_dir = "out";

    bool is_pair_kind() const { return kind == Kind::CoefficientPair; }

    std::vector<double> effective_radii() const {
        return radii.empty() ? std::vector<double>{domain.trunc_radius} : radii;
    }

    void validate() const {
        domain.validate();
        bc.validate();
        if (levels.empty()) throw SpecgapError("config: mesh.levels must be nonempty");
        for (std::size_t i = 1; i < levels.size(); ++i)
            if (levels[i] <= levels[i - 1])
                throw SpecgapError("config: mesh.levels must be strictly increasing");
        for (int l : levels)
            if (l < 0) throw SpecgapError("config: mesh levels must be nonnegative");
        for (double r : effective_radii())
            if (!(r > domain.obstacle_extent()))
                throw SpecgapError("config: every truncation radius must exceed the obstacle extent");
        if (kind == Kind::DirichletVsNeumann) {
            if (bc.omega_empty() || bc.robin_alpha != 0)
                throw SpecgapError("config: the Neumann comparison needs the full window and alpha = 0");
        }
        if (kind == Kind::DirichletVsMixed && bc.omega_empty())
            throw SpecgapError("config: the mixed comparison needs a nonempty boundary window");
        bool decaying = false;
        for (const auto& t : f1.V.terms)
            if (t.kind == PotentialSpec::Term::Kind::RadialPower) decaying = true;
        if (decaying)
            for (double mu : probes)
                if (!(mu < 0))
                    throw SpecgapError("config: probes must be negative for decaying potentials");
        if (!(solver.tol > 0) || solver.dense_cutoff < 1 || solver.max_subspace < 4 ||
            solver.max_iters < 1)
            throw SpecgapError("config: invalid solver settings");
        if (oracle_enabled) {
            if (oracle_n_r < 8) throw SpecgapError("config: oracle.n_r must be at least 8");
            if (!f1.V.is_radial())
                throw SpecgapError("config: the oracle crosscheck needs a radially symmetric potential");
            if (!std::holds_alternative<DiskObstacle>(domain.obstacle))
                throw SpecgapError("config: the oracle crosscheck needs a disk obstacle");
            if (kind == Kind::CoefficientPair)
                throw SpecgapError("config: the oracle crosscheck applies to boundary-condition comparisons");
            const bool full_window = bc.omega.size() == 1 && bc.omega[0].a == 0 &&
                                     bc.omega[0].b >= 2 * kPi - 1e-15;
            if (!full_window)
                throw SpecgapError("config: the oracle crosscheck needs the full boundary window");
            if ((f1.a.base - Eigen::Matrix2d::Identity()).norm() != 0 || f1.a.bump_gain.norm() != 0)
                throw SpecgapError("config: the oracle crosscheck needs the identity coefficient");
        }
    }
};

namespace detail {

inline PotentialSpec parse_potential(const KVConfig& kv, const std::string& prefix, bool required) {
    if (!kv.has(prefix + ".kind")) {
        if (required) throw SpecgapError("config: missing required key '" + prefix + ".kind'");
        return PotentialSpec::zero();
    }
    const std::string kind = kv.get_string(prefix + ".kind");
    PotentialSpec V;
    if (kind == "zero") {
        V = PotentialSpec::zero();
    } else if (kind == "radial_well") {
        V = PotentialSpec::radial_well(kv.get_double(prefix + ".depth"),
                                       kv.get_double(prefix + ".ra"),
                                       kv.get_double(prefix + ".rb"));
    } else if (kind == "radial_power") {
        V = PotentialSpec::radial_power(kv.get_double(prefix + ".alpha"),
                                        kv.get_double(prefix + ".eps"),
                                        kv.get_double(prefix + ".cap_radius"));
    } else {
        throw SpecgapError("config line " + std::to_string(kv.line_of(prefix + ".kind")) +
                           ": unknown potential kind '" + kind + "'");
    }
    if (kv.has(prefix + ".bump_height")) {
        const Eigen::Vector2d c{kv.get_double(prefix + ".bump_center_x", 0.0),
                                kv.get_double(prefix + ".bump_center_y", 0.0)};
        V = V + PotentialSpec::ball_bump(c, kv.get_double(prefix + ".bump_radius"),
                                         kv.get_double(prefix + ".bump_height"));
    }
    return V;
}

inline CoefficientField parse_coefficient(const KVConfig& kv, const std::string& prefix) {
    CoefficientField f = CoefficientField::scaled_identity(kv.get_double(prefix + ".scale", 1.0));
    if (kv.has(prefix + ".bump_gain")) {
        const double gain = kv.get_double(prefix + ".bump_gain");
        const Eigen::Vector2d c{kv.get_double(prefix + ".bump_center_x", 0.0),
                                kv.get_double(prefix + ".bump_center_y", 0.0)};
        CoefficientField bumped =
            CoefficientField::isotropic_bump(c, kv.get_double(prefix + ".bump_radius"), gain);
        bumped.base = f.base;
        bumped.ellipticity_constant = std::min(f.ellipticity_constant,
                                               f.ellipticity_constant + gain);
        f = bumped;
    }
    return f;
}

inline std::vector<AngularInterval> parse_omega(const KVConfig& kv, const std::string& key) {
    const std::string v = kv.get_string(key, "full");
    if (v == "full") return {{0.0, 2 * kPi}};
    if (v == "none") return {};
    std::vector<AngularInterval> out;
    std::istringstream in(v);
    std::string seg;
    while (std::getline(in, seg, ',')) {
        const std::size_t colon = seg.find(':');
        if (colon == std::string::npos)
            throw SpecgapError("config line " + std::to_string(kv.line_of(key)) +
                               ": window segment '" + seg + "' must look like a:b");
        try {
            out.push_back({std::stod(seg.substr(0, colon)), std::stod(seg.substr(colon + 1))});
        } catch (const std::exception&) {
            throw SpecgapError("config line " + std::to_string(kv.line_of(key)) +
                               ": cannot parse window segment '" + seg + "'");
        }
    }
    return out;
}

} // namespace detail

inline ExperimentConfig config_from_kv(const KVConfig& kv) {
    ExperimentConfig cfg;
    cfg.name = kv.get_string("experiment.name", "custom");
    const std::string kind = kv.get_string("experiment.kind");
    if (kind == "dirichlet_vs_neumann")
        cfg.kind = ExperimentConfig::Kind::DirichletVsNeumann;
    else if (kind == "dirichlet_vs_mixed")
        cfg.kind = ExperimentConfig::Kind::DirichletVsMixed;
    else if (kind == "coefficient_pair")
        cfg.kind = ExperimentConfig::Kind::CoefficientPair;
    else
        throw SpecgapError("config line " + std::to_string(kv.line_of("experiment.kind")) +
                           ": unknown experiment kind '" + kind + "'");

    const std::string obstacle = kv.get_string("domain.obstacle", "disk");
    if (obstacle == "disk") {
        cfg.domain.obstacle = DiskObstacle{kv.get_double("domain.obstacle_radius", 1.0)};
    } else if (obstacle == "polygon") {
        const std::vector<double> flat = kv.get_double_list("domain.polygon");
        if (flat.size() < 6 || flat.size() % 2 != 0)
            throw SpecgapError("config line " + std::to_string(kv.line_of("domain.polygon")) +
                               ": polygon needs at least 3 x,y pairs");
        PolygonObstacle poly;
        for (std::size_t i = 0; i < flat.size(); i += 2)
            poly.vertices.push_back({flat[i], flat[i + 1]});
        cfg.domain.obstacle = poly;
    } else {
        throw SpecgapError("config line " + std::to_string(kv.line_of("domain.obstacle")) +
                           ": unknown obstacle type '" + obstacle + "'");
    }
    cfg.domain.trunc_radius = kv.get_double("domain.trunc_radius", 4.0);
    cfg.domain.grading = kv.get_double("domain.grading", 1.0);
    cfg.domain.base_ntheta = kv.get_int("domain.base_ntheta", 16);
    cfg.domain.base_nr = kv.get_int("domain.base_nr", 8);
    cfg.domain.radial_anchors = kv.get_double_list("domain.radial_anchors", {});

    cfg.levels = kv.get_int_list("mesh.levels", {0, 1, 2});
    cfg.radii = kv.get_double_list("mesh.radii", {});

    cfg.bc.omega = detail::parse_omega(kv, "bc.omega");
    cfg.bc.robin_alpha = kv.get_double("bc.alpha", 0.0);

    cfg.f1.V = detail::parse_potential(kv, "potential1", false);
    cfg.f1.a = detail::parse_coefficient(kv, "coeff1");
    if (cfg.kind == ExperimentConfig::Kind::CoefficientPair) {
        const bool has_second = kv.has("potential2.kind") || kv.has("coeff2.scale") ||
                                kv.has("coeff2.bump_gain");
        if (!has_second)
            throw SpecgapError("config: the coefficient-pair comparison needs a second operator "
                               "(potential2.* or coeff2.*)");
        cfg.f2.V = kv.has("potential2.kind") ? detail::parse_potential(kv, "potential2", true) : cfg.f1.V;
        cfg.f2.a = detail::parse_coefficient(kv, "coeff2");
    }

    if (kv.has("strict_ball.radius")) {
        StrictBall sb;
        sb.center = {kv.get_double("strict_ball.center_x", 0.0),
                     kv.get_double("strict_ball.center_y", 0.0)};
        sb.radius = kv.get_double("strict_ball.radius");
        const std::string cond = kv.get_string("strict_ball.condition", "scalar");
        if (cond == "scalar")
            sb.condition = StrictBall::Condition::ScalarStrict;
        else if (cond == "matrix")
            sb.condition = StrictBall::Condition::MatrixInvertible;
        else
            throw SpecgapError("config line " + std::to_string(kv.line_of("strict_ball.condition")) +
                               ": unknown strict-ball condition '" + cond + "'");
        cfg.strict_ball = sb;
    }

    cfg.ceiling = kv.get_double("comparison.ceiling", -0.05);
    cfg.probes = kv.get_double_list("comparison.probes", {});
    cfg.certify_gaps = kv.get_bool("comparison.certify", true);
    cfg.sensitivity = kv.get_bool("comparison.sensitivity", false);
    cfg.count_growth_check = kv.get_bool("comparison.count_growth", false);

    cfg.solver.tol = kv.get_double("solver.tol", 1e-9);
    cfg.solver.dense_cutoff = kv.get_int("solver.dense_cutoff", 600);
    cfg.solver.max_subspace = kv.get_int("solver.max_subspace", 192);
    cfg.solver.max_iters = kv.get_int("solver.max_iters", 400);
    cfg.solver.seed = static_cast<unsigned>(kv.get_int("solver.seed", 12345));
    cfg.solver.force_iterative = kv.get_bool("solver.force_iterative", false);

    cfg.oracle_enabled = kv.get_bool("oracle.enabled", false);
    cfg.oracle_n_r = kv.get_int("oracle.n_r", 2048);
    cfg.oracle_m_max = kv.get_int("oracle.m_max", 8);

    cfg.output_dir = kv.get_string("output.dir", "out");

    const auto unknown = kv.unknown_keys();
    if (!unknown.empty())
        throw SpecgapError("config line " + std::to_string(unknown.front().second) +
                           ": unknown key '" + unknown.front().first + "'");

    cfg.validate();
    return cfg;
}

inline ExperimentConfig config_from_text(const std::string& text) {
    return config_from_kv(KVConfig::parse(text));
}

// Serializes a resolved configuration back to the flat key/value schema.
inline void write_config(std::ostream& os, const ExperimentConfig& cfg) {
    os << "experiment.name = " << cfg.name << "\n";
    os << "experiment.kind = ";
    switch (cfg.kind) {
        case ExperimentConfig::Kind::DirichletVsNeumann: os << "dirichlet_vs_neumann"; break;
        case ExperimentConfig::Kind::DirichletVsMixed: os << "dirichlet_vs_mixed"; break;
        case ExperimentConfig::Kind::CoefficientPair: os << "coefficient_pair"; break;
    }
    os << "\n\n";
    if (const auto* disk = std::get_if<DiskObstacle>(&cfg.domain.obstacle)) {
        os << "domain.obstacle = disk\n";
        os << "domain.obstacle_radius = " << fmt17(disk->radius) << "\n";
    } else {
        const auto& poly = std::get<PolygonObstacle>(cfg.domain.obstacle);
        os << "domain.obstacle = polygon\n";
        os << "domain.polygon =";
        for (const auto& v : poly.vertices) os << " " << fmt17(v.x()) << "," << fmt17(v.y());
        os << "\n";
    }
    os << "domain.trunc_radius = " << fmt17(cfg.domain.trunc_radius) << "\n";
    os << "domain.grading = " << fmt17(cfg.domain.grading) << "\n";
    os << "domain.base_ntheta = " << cfg.domain.base_ntheta << "\n";
    os << "domain.base_nr = " << cfg.domain.base_nr << "\n";
    if (!cfg.domain.radial_anchors.empty()) {
        os << "domain.radial_anchors =";
        for (double a : cfg.domain.radial_anchors) os << " " << fmt17(a);
        os << "\n";
    }
    os << "\nmesh.levels =";
    for (int l : cfg.levels) os << " " << l;
    os << "\n";
    if (!cfg.radii.empty()) {
        os << "mesh.radii =";
        for (double r : cfg.radii) os << " " << fmt17(r);
        os << "\n";
    }
    os << "\nbc.omega = ";
    if (cfg.bc.omega.empty()) {
        os << "none";
    } else if (cfg.bc.omega.size() == 1 && cfg.bc.omega[0].a == 0 &&
               cfg.bc.omega[0].b >= 2 * kPi - 1e-15) {
        os << "full";
    } else {
        for (std::size_t i = 0; i < cfg.bc.omega.size(); ++i) {
            if (i) os << ",";
            os << fmt17(cfg.bc.omega[i].a) << ":" << fmt17(cfg.bc.omega[i].b);
        }
    }
    os << "\n";
    os << "bc.alpha = " << fmt17(cfg.bc.robin_alpha) << "\n";

    auto write_potential = [&os](const std::string& prefix, const PotentialSpec& V) {
        const PotentialSpec::Term* main = nullptr;
        const PotentialSpec::Term* bump = nullptr;
        for (const auto& t : V.terms) {
            if (t.kind == PotentialSpec::Term::Kind::Bump)
                bump = &t;
            else if (t.kind != PotentialSpec::Term::Kind::Zero)
                main = &t;
        }
        if (!main) {
            os << prefix << ".kind = zero\n";
        } else if (main->kind == PotentialSpec::Term::Kind::RadialWell) {
            os << prefix << ".kind = radial_well\n";
            os << prefix << ".depth = " << fmt17(main->depth) << "\n";
            os << prefix << ".ra = " << fmt17(main->ra) << "\n";
            os << prefix << ".rb = " << fmt17(main->rb) << "\n";
        } else if (main->kind == PotentialSpec::Term::Kind::RadialPower) {
            os << prefix << ".kind = radial_power\n";
            os << prefix << ".alpha = " << fmt17(main->alpha) << "\n";
            os << prefix << ".eps = " << fmt17(main->eps) << "\n";
            os << prefix << ".cap_radius = " << fmt17(main->cap_radius) << "\n";
        }
        if (bump) {
            os << prefix << ".bump_center_x = " << fmt17(bump->bump.center.x()) << "\n";
            os << prefix << ".bump_center_y = " << fmt17(bump->bump.center.y()) << "\n";
            os << prefix << ".bump_radius = " << fmt17(bump->bump.radius) << "\n";
            os << prefix << ".bump_height = " << fmt17(bump->bump.height) << "\n";
        }
    };
    auto write_coefficient = [&os](const std::string& prefix, const CoefficientField& f) {
        if (f.base(0, 0) != 1.0) os << prefix << ".scale = " << fmt17(f.base(0, 0)) << "\n";
        if (f.bump_gain(0, 0) != 0.0) {
            os << prefix << ".bump_gain = " << fmt17(f.bump_gain(0, 0)) << "\n";
            os << prefix << ".bump_center_x = " << fmt17(f.bump.center.x()) << "\n";
            os << prefix << ".bump_center_y = " << fmt17(f.bump.center.y()) << "\n";
            os << prefix << ".bump_radius = " << fmt17(f.bump.radius) << "\n";
        }
    };
    os << "\n";
    write_potential("potential1", cfg.f1.V);
    write_coefficient("coeff1", cfg.f1.a);
    if (cfg.kind == ExperimentConfig::Kind::CoefficientPair) {
        write_potential("potential2", cfg.f2.V);
        write_coefficient("coeff2", cfg.f2.a);
    }
    if (cfg.strict_ball) {
        os << "\nstrict_ball.center_x = " << fmt17(cfg.strict_ball->center.x()) << "\n";
        os << "strict_ball.center_y = " << fmt17(cfg.strict_ball->center.y()) << "\n";
        os << "strict_ball.radius = " << fmt17(cfg.strict_ball->radius) << "\n";
        os << "strict_ball.condition = "
           << (cfg.strict_ball->condition == StrictBall::Condition::ScalarStrict ? "scalar" : "matrix")
           << "\n";
    }
    os << "\ncomparison.ceiling = " << fmt17(cfg.ceiling) << "\n";
    if (!cfg.probes.empty()) {
        os << "comparison.probes =";
        for (double p : cfg.probes) os << " " << fmt17(p);
        os << "\n";
    }
    os << "comparison.certify = " << (cfg.certify_gaps ? "true" : "false") << "\n";
    os << "comparison.sensitivity = " << (cfg.sensitivity ? "true" : "false") << "\n";
    os << "comparison.count_growth = " << (cfg.count_growth_check ? "true" : "false") << "\n";
    os << "\nsolver.tol = " << fmt17(cfg.solver.tol) << "\n";
    os << "solver.dense_cutoff = " << cfg.solver.dense_cutoff << "\n";
    os << "solver.max_subspace = " << cfg.solver.max_subspace << "\n";
    os << "solver.max_iters = " << cfg.solver.max_iters << "\n";
    os << "solver.seed = " << cfg.solver.seed << "\n";
    os << "solver.force_iterative = " << (cfg.solver.force_iterative ? "true" : "false") << "\n";
    os << "\noracle.enabled = " << (cfg.oracle_enabled ? "true" : "false") << "\n";
    if (cfg.oracle_enabled) {
        os << "oracle.n_r = " << cfg.oracle_n_r << "\n";
        os << "oracle.m_max = " << cfg.oracle_m_max << "\n";
    }
    os << "\noutput.dir = " << cfg.output_dir << "\n";
}

} // namespace specgap
