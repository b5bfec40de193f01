#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "specgap/config.hpp"
#include "specgap/presets.hpp"
#include "specgap/runner.hpp"

using namespace specgap;
using Catch::Matchers::ContainsSubstring;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(line);
    return out;
}

double max_abs_diff(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("key value text parses with comments, defaults, and typed access") {
    const std::string text =
        "# leading comment\n"
        "\n"
        "a.str = hello world\n"
        "a.num =  -2.5   # trailing comment\n"
        "a.int = 7\n"
        "a.flag_t = yes\n"
        "a.flag_f = 0\n"
        "a.dlist = 1.5, 2 3.25\n"
        "a.ilist = 4 5,6\n";
    const KVConfig kv = KVConfig::parse(text);

    REQUIRE(kv.has("a.str"));
    REQUIRE_FALSE(kv.has("a.missing"));
    REQUIRE(kv.get_string("a.str") == "hello world");
    REQUIRE(kv.get_string("a.missing", "dflt") == "dflt");
    REQUIRE(kv.get_double("a.num") == -2.5);
    REQUIRE(kv.get_double("a.missing", 9.0) == 9.0);
    REQUIRE(kv.get_int("a.int") == 7);
    REQUIRE(kv.get_int("a.missing", -3) == -3);
    REQUIRE(kv.get_bool("a.flag_t"));
    REQUIRE_FALSE(kv.get_bool("a.flag_f"));
    REQUIRE(kv.get_bool("a.missing", true));
    REQUIRE(kv.get_double_list("a.dlist") == std::vector<double>{1.5, 2.0, 3.25});
    REQUIRE(kv.get_int_list("a.ilist") == std::vector<int>{4, 5, 6});
    REQUIRE(kv.get_double_list("a.missing", {1.0}) == std::vector<double>{1.0});

    // line numbers count raw file lines, comments and blanks included
    REQUIRE(kv.line_of("a.str") == 3);
    REQUIRE(kv.line_of("a.num") == 4);
    REQUIRE(kv.line_of("a.missing") == 0);

    // every key above was touched, so nothing is left unknown
    REQUIRE(kv.unknown_keys().empty());
}

TEST_CASE("unused keys are reported with their location") {
    const KVConfig kv = KVConfig::parse("seen.key = 1\nstray.key = 2\n");
    REQUIRE(kv.get_int("seen.key") == 1);
    const auto unknown = kv.unknown_keys();
    REQUIRE(unknown.size() == 1);
    REQUIRE(unknown[0].first == "stray.key");
    REQUIRE(unknown[0].second == 2);
}

TEST_CASE("malformed config text is rejected with line numbers") {
    REQUIRE_THROWS_WITH(KVConfig::parse("just some words\n"),
                        ContainsSubstring("config line 1: expected 'key = value', got 'just some words'"));
    REQUIRE_THROWS_WITH(KVConfig::parse("ok.key = 1\n = orphan\n"),
                        ContainsSubstring("config line 2: empty key"));
    REQUIRE_THROWS_WITH(KVConfig::parse("dup.key = 1\n\ndup.key = 2\n"),
                        ContainsSubstring("config line 3: duplicate key 'dup.key' (first set on line 1)"));

    const KVConfig kv = KVConfig::parse("bad.num = abc\nbad.int = 2.5\nbad.bool = maybe\n");
    REQUIRE_THROWS_WITH(kv.get_double("bad.num"),
                        ContainsSubstring("config line 1: key 'bad.num': cannot parse 'abc' as a number"));
    REQUIRE_THROWS_WITH(kv.get_int("bad.int"),
                        ContainsSubstring("config line 2: key 'bad.int': cannot parse '2.5' as an integer"));
    REQUIRE_THROWS_WITH(kv.get_bool("bad.bool"),
                        ContainsSubstring("config line 3: key 'bad.bool': cannot parse 'maybe' as a boolean"));
    REQUIRE_THROWS_WITH(kv.get_string("no.such"),
                        ContainsSubstring("config: missing required key 'no.such'"));
}

TEST_CASE("boundary window strings parse to angular intervals") {
    {
        const KVConfig kv = KVConfig::parse("");
        const auto full = detail::parse_omega(kv, "bc.omega");
        REQUIRE(full.size() == 1);
        REQUIRE(full[0].a == 0.0);
        REQUIRE(full[0].b == 2 * kPi);
    }
    {
        const KVConfig kv = KVConfig::parse("bc.omega = none\n");
        REQUIRE(detail::parse_omega(kv, "bc.omega").empty());
    }
    {
        const KVConfig kv = KVConfig::parse("bc.omega = 0.5:1.25, 2:3\n");
        const auto w = detail::parse_omega(kv, "bc.omega");
        REQUIRE(w.size() == 2);
        REQUIRE(w[0].a == 0.5);
        REQUIRE(w[0].b == 1.25);
        REQUIRE(w[1].a == 2.0);
        REQUIRE(w[1].b == 3.0);
    }
    {
        const KVConfig kv = KVConfig::parse("bc.omega = 0.5\n");
        REQUIRE_THROWS_WITH(detail::parse_omega(kv, "bc.omega"),
                            ContainsSubstring("window segment '0.5' must look like a:b"));
    }
    {
        const KVConfig kv = KVConfig::parse("bc.omega = lo:hi\n");
        REQUIRE_THROWS_WITH(detail::parse_omega(kv, "bc.omega"),
                            ContainsSubstring("cannot parse window segment 'lo:hi'"));
    }
}

TEST_CASE("a minimal experiment config resolves to the documented defaults") {
    const ExperimentConfig cfg = config_from_text("experiment.kind = dirichlet_vs_neumann\n");
    REQUIRE(cfg.name == "custom");
    REQUIRE(cfg.kind == ExperimentConfig::Kind::DirichletVsNeumann);
    const auto* disk = std::get_if<DiskObstacle>(&cfg.domain.obstacle);
    REQUIRE(disk != nullptr);
    REQUIRE(disk->radius == 1.0);
    REQUIRE(cfg.domain.trunc_radius == 4.0);
    REQUIRE(cfg.domain.grading == 1.0);
    REQUIRE(cfg.domain.base_ntheta == 16);
    REQUIRE(cfg.domain.base_nr == 8);
    REQUIRE(cfg.domain.radial_anchors.empty());
    REQUIRE(cfg.levels == std::vector<int>{0, 1, 2});
    REQUIRE(cfg.radii.empty());
    REQUIRE(cfg.effective_radii() == std::vector<double>{4.0});
    REQUIRE(cfg.bc.omega.size() == 1);
    REQUIRE(cfg.bc.omega[0].a == 0.0);
    REQUIRE(cfg.bc.omega[0].b == 2 * kPi);
    REQUIRE(cfg.bc.robin_alpha == 0.0);
    REQUIRE(cfg.f1.V({1.5, 0.3}) == 0.0);
    REQUIRE(max_abs_diff(cfg.f1.a({1.5, 0.3}), Eigen::Matrix2d::Identity()) == 0.0);
    REQUIRE_FALSE(cfg.strict_ball.has_value());
    REQUIRE(cfg.ceiling == -0.05);
    REQUIRE(cfg.probes.empty());
    REQUIRE(cfg.certify_gaps);
    REQUIRE_FALSE(cfg.sensitivity);
    REQUIRE_FALSE(cfg.count_growth_check);
    REQUIRE(cfg.solver.tol == 1e-9);
    REQUIRE(cfg.solver.dense_cutoff == 600);
    REQUIRE(cfg.solver.max_subspace == 192);
    REQUIRE(cfg.solver.max_iters == 400);
    REQUIRE(cfg.solver.seed == 12345u);
    REQUIRE_FALSE(cfg.solver.force_iterative);
    REQUIRE_FALSE(cfg.oracle_enabled);
    REQUIRE(cfg.output_dir == "out");
}

TEST_CASE("config text populates potentials, coefficients, and the strict ball") {
    const std::string text =
        "experiment.name = demo\n"
        "experiment.kind = coefficient_pair\n"
        "domain.trunc_radius = 8\n"
        "mesh.levels = 1 2\n"
        "potential1.kind = radial_well\n"
        "potential1.depth = 8\n"
        "potential1.ra = 1\n"
        "potential1.rb = 2\n"
        "potential2.kind = radial_well\n"
        "potential2.depth = 8\n"
        "potential2.ra = 1\n"
        "potential2.rb = 2\n"
        "potential2.bump_center_x = 1.5\n"
        "potential2.bump_radius = 0.3\n"
        "potential2.bump_height = 1.0\n"
        "coeff2.bump_gain = 0.5\n"
        "coeff2.bump_center_x = 1.5\n"
        "coeff2.bump_radius = 0.5\n"
        "strict_ball.center_x = 1.5\n"
        "strict_ball.radius = 0.15\n"
        "strict_ball.condition = scalar\n";
    const ExperimentConfig cfg = config_from_text(text);
    REQUIRE(cfg.name == "demo");
    REQUIRE(cfg.is_pair_kind());
    REQUIRE(cfg.f1.V({1.5, 0.0}) == -8.0);
    REQUIRE(cfg.f1.V({3.0, 0.0}) == 0.0);
    // the second potential carries the bump: +1 at its center on top of the well
    REQUIRE(cfg.f2.V({1.5, 0.0}) == -7.0);
    REQUIRE(max_abs_diff(cfg.f2.a({1.5, 0.0}), 1.5 * Eigen::Matrix2d::Identity()) == 0.0);
    REQUIRE(max_abs_diff(cfg.f2.a({3.0, 0.0}), Eigen::Matrix2d::Identity()) == 0.0);
    REQUIRE(cfg.strict_ball.has_value());
    REQUIRE(cfg.strict_ball->center.x() == 1.5);
    REQUIRE(cfg.strict_ball->radius == 0.15);
    REQUIRE(cfg.strict_ball->condition == StrictBall::Condition::ScalarStrict);
}

TEST_CASE("config text rejects unknown names with their line") {
    REQUIRE_THROWS_WITH(config_from_text("experiment.kind = banana\n"),
                        ContainsSubstring("config line 1: unknown experiment kind 'banana'"));
    REQUIRE_THROWS_WITH(
        config_from_text("experiment.kind = dirichlet_vs_neumann\ndomain.obstacle = square\n"),
        ContainsSubstring("config line 2: unknown obstacle type 'square'"));
    REQUIRE_THROWS_WITH(
        config_from_text("experiment.kind = dirichlet_vs_neumann\npotential1.kind = pit\n"),
        ContainsSubstring("unknown potential kind 'pit'"));
    REQUIRE_THROWS_WITH(
        config_from_text("experiment.kind = dirichlet_vs_neumann\nmesh.levles = 1\n"),
        ContainsSubstring("config line 2: unknown key 'mesh.levles'"));
    REQUIRE_THROWS_WITH(
        config_from_text("experiment.kind = coefficient_pair\n"
                         "strict_ball.radius = 0.1\nstrict_ball.condition = weird\n"
                         "coeff2.scale = 2\n"),
        ContainsSubstring("unknown strict-ball condition 'weird'"));
    REQUIRE_THROWS_WITH(
        config_from_text("experiment.kind = dirichlet_vs_neumann\n"
                         "domain.obstacle = polygon\ndomain.polygon = 1,0 0,1\n"),
        ContainsSubstring("polygon needs at least 3 x,y pairs"));
    REQUIRE_THROWS_WITH(config_from_text("experiment.kind = coefficient_pair\n"),
                        ContainsSubstring("needs a second operator"));
}

TEST_CASE("semantic validation rejects inconsistent configurations") {
    auto base = [] {
        ExperimentConfig cfg = make_preset("zero-potential-vacuous");
        return cfg;
    };

    { ExperimentConfig c = base(); c.levels = {}; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("mesh.levels must be nonempty")); }
    { ExperimentConfig c = base(); c.levels = {2, 1}; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("strictly increasing")); }
    { ExperimentConfig c = base(); c.levels = {-1, 0}; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("nonnegative")); }
    { ExperimentConfig c = base(); c.radii = {8.0, 0.5}; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("must exceed the obstacle extent")); }
    { ExperimentConfig c = base(); c.bc.robin_alpha = 1.0; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("needs the full window and alpha = 0")); }
    { ExperimentConfig c = base(); c.kind = ExperimentConfig::Kind::DirichletVsMixed; c.bc.omega.clear(); REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("nonempty boundary window")); }
    { ExperimentConfig c = base(); c.solver.tol = 0.0; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("invalid solver settings")); }
    { ExperimentConfig c = base(); c.solver.max_subspace = 2; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("invalid solver settings")); }

    {
        ExperimentConfig c = make_preset("slow-decay");
        c.probes = {0.1};
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("probes must be negative"));
    }

    // oracle preconditions
    { ExperimentConfig c = base(); c.oracle_enabled = true; c.oracle_n_r = 4; REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("oracle.n_r must be at least 8")); }
    {
        ExperimentConfig c = base();
        c.oracle_enabled = true;
        c.f1.V = c.f1.V + PotentialSpec::ball_bump({1.5, 0.0}, 0.3, 1.0);
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("radially symmetric potential"));
    }
    {
        ExperimentConfig c = base();
        c.oracle_enabled = true;
        PolygonObstacle poly;
        poly.vertices = {{0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
        c.domain.obstacle = poly;
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("needs a disk obstacle"));
    }
    {
        ExperimentConfig c = make_preset("coefficient-potential-bump");
        c.oracle_enabled = true;
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("applies to boundary-condition comparisons"));
    }
    {
        ExperimentConfig c = make_preset("mixed-robin-halfcircle");
        c.oracle_enabled = true;
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("needs the full boundary window"));
    }
    {
        ExperimentConfig c = base();
        c.oracle_enabled = true;
        c.f1.a = CoefficientField::scaled_identity(2.0);
        REQUIRE_THROWS_WITH(c.validate(), ContainsSubstring("needs the identity coefficient"));
    }
}

TEST_CASE("presets are listed, described, and internally consistent") {
    const auto presets = preset_list();
    REQUIRE(presets.size() == 6);

    const std::vector<std::string> required = {
        "neumann-vs-dirichlet-well", "mixed-robin-halfcircle", "slow-decay",
        "coefficient-potential-bump", "coefficient-matrix-bump", "zero-potential-vacuous"};
    const auto names = preset_names();
    for (const auto& want : required)
        REQUIRE(std::find(names.begin(), names.end(), want) != names.end());

    for (const auto& p : presets) {
        INFO("preset " << p.name);
        REQUIRE_FALSE(p.name.empty());
        REQUIRE(p.description.size() > 40);
        REQUIRE(is_preset(p.name));
        const ExperimentConfig cfg = make_preset(p.name);
        REQUIRE(cfg.name == p.name);
        REQUIRE(cfg.output_dir == "out/" + p.name);
        REQUIRE_NOTHROW(cfg.validate());
    }

    REQUIRE_FALSE(is_preset("no-such-preset"));
    REQUIRE_THROWS_WITH(make_preset("no-such-preset"),
                        ContainsSubstring("unknown preset 'no-such-preset'"));
}

TEST_CASE("preset parameters match their frozen definitions") {
    {
        const ExperimentConfig c = make_preset("neumann-vs-dirichlet-well");
        REQUIRE(c.kind == ExperimentConfig::Kind::DirichletVsNeumann);
        REQUIRE(c.domain.trunc_radius == 12.0);
        REQUIRE(c.domain.grading == 2.0);
        REQUIRE(c.domain.radial_anchors == std::vector<double>{2.0});
        REQUIRE(c.levels == std::vector<int>{0, 1, 2});
        REQUIRE(c.f1.V({1.5, 0.0}) == -8.0);
        REQUIRE(c.sensitivity);
        REQUIRE(c.oracle_enabled);
        REQUIRE(c.oracle_n_r == 2048);
    }
    {
        const ExperimentConfig c = make_preset("mixed-robin-halfcircle");
        REQUIRE(c.kind == ExperimentConfig::Kind::DirichletVsMixed);
        REQUIRE(c.bc.robin_alpha == 1.0);
        REQUIRE(c.bc.omega.size() == 1);
        REQUIRE(c.bc.omega[0].a == 0.0);
        REQUIRE(c.bc.omega[0].b == kPi);
        REQUIRE_FALSE(c.oracle_enabled);
    }
    {
        const ExperimentConfig c = make_preset("slow-decay");
        REQUIRE(c.radii == std::vector<double>{8.0, 16.0, 32.0, 64.0});
        REQUIRE(c.effective_radii() == c.radii);
        REQUIRE(c.levels == std::vector<int>{1});
        REQUIRE(c.probes == std::vector<double>{-1e-3});
        REQUIRE(c.ceiling == -1e-3);
        REQUIRE_FALSE(c.certify_gaps);
        REQUIRE(c.count_growth_check);
        // decaying tail: capped at -1 inside r=1, then -r^(-3/2)
        REQUIRE(c.f1.V({0.5, 0.0}) == -1.0);
        REQUIRE_THAT(c.f1.V({4.0, 0.0}), Catch::Matchers::WithinRel(-std::pow(4.0, -1.5), 1e-15));
    }
    {
        const ExperimentConfig c = make_preset("coefficient-potential-bump");
        REQUIRE(c.is_pair_kind());
        REQUIRE(c.levels == std::vector<int>{1, 2, 3});
        REQUIRE(c.f2.V({1.5, 0.0}) - c.f1.V({1.5, 0.0}) == 1.0);
        REQUIRE(c.strict_ball.has_value());
        REQUIRE(c.strict_ball->radius == 0.15);
        REQUIRE(c.strict_ball->condition == StrictBall::Condition::ScalarStrict);
    }
    {
        const ExperimentConfig c = make_preset("coefficient-matrix-bump");
        REQUIRE(c.is_pair_kind());
        REQUIRE(max_abs_diff(c.f2.a({1.5, 0.0}), 1.5 * Eigen::Matrix2d::Identity()) == 0.0);
        REQUIRE(c.f2.V({1.5, 0.0}) == c.f1.V({1.5, 0.0}));
        REQUIRE(c.strict_ball->radius == 0.25);
        REQUIRE(c.strict_ball->condition == StrictBall::Condition::MatrixInvertible);
    }
    {
        const ExperimentConfig c = make_preset("zero-potential-vacuous");
        REQUIRE(c.f1.V({1.5, 0.0}) == 0.0);
        REQUIRE(c.levels == std::vector<int>{0, 1});
    }
}

TEST_CASE("every preset round trips through the text serializer") {
    const std::vector<Eigen::Vector2d> samples = {
        {0.5, 0.0}, {1.5, 0.0}, {1.6, 0.1}, {0.0, 2.5}, {-3.0, 1.0}};
    for (const auto& p : preset_list()) {
        INFO("preset " << p.name);
        const ExperimentConfig a = make_preset(p.name);
        std::ostringstream os;
        write_config(os, a);
        const ExperimentConfig b = config_from_text(os.str());

        REQUIRE(b.name == a.name);
        REQUIRE(b.kind == a.kind);
        REQUIRE(b.output_dir == a.output_dir);

        const auto* da = std::get_if<DiskObstacle>(&a.domain.obstacle);
        const auto* db = std::get_if<DiskObstacle>(&b.domain.obstacle);
        REQUIRE(da != nullptr);
        REQUIRE(db != nullptr);
        REQUIRE(db->radius == da->radius);
        REQUIRE(b.domain.trunc_radius == a.domain.trunc_radius);
        REQUIRE(b.domain.grading == a.domain.grading);
        REQUIRE(b.domain.base_ntheta == a.domain.base_ntheta);
        REQUIRE(b.domain.base_nr == a.domain.base_nr);
        REQUIRE(b.domain.radial_anchors == a.domain.radial_anchors);

        REQUIRE(b.levels == a.levels);
        REQUIRE(b.radii == a.radii);
        REQUIRE(b.probes == a.probes);
        REQUIRE(b.ceiling == a.ceiling);

        REQUIRE(b.bc.omega.size() == a.bc.omega.size());
        for (std::size_t i = 0; i < a.bc.omega.size(); ++i) {
            REQUIRE(b.bc.omega[i].a == a.bc.omega[i].a);
            REQUIRE(b.bc.omega[i].b == a.bc.omega[i].b);
        }
        REQUIRE(b.bc.robin_alpha == a.bc.robin_alpha);

        for (const auto& x : samples) {
            REQUIRE(b.f1.V(x) == a.f1.V(x));
            REQUIRE(max_abs_diff(b.f1.a(x), a.f1.a(x)) == 0.0);
            if (a.is_pair_kind()) {
                REQUIRE(b.f2.V(x) == a.f2.V(x));
                REQUIRE(max_abs_diff(b.f2.a(x), a.f2.a(x)) == 0.0);
            }
        }
        REQUIRE(b.f1.V.is_radial() == a.f1.V.is_radial());

        REQUIRE(b.strict_ball.has_value() == a.strict_ball.has_value());
        if (a.strict_ball) {
            REQUIRE(b.strict_ball->center == a.strict_ball->center);
            REQUIRE(b.strict_ball->radius == a.strict_ball->radius);
            REQUIRE(b.strict_ball->condition == a.strict_ball->condition);
        }

        REQUIRE(b.certify_gaps == a.certify_gaps);
        REQUIRE(b.sensitivity == a.sensitivity);
        REQUIRE(b.count_growth_check == a.count_growth_check);

        REQUIRE(b.solver.tol == a.solver.tol);
        REQUIRE(b.solver.dense_cutoff == a.solver.dense_cutoff);
        REQUIRE(b.solver.max_subspace == a.solver.max_subspace);
        REQUIRE(b.solver.max_iters == a.solver.max_iters);
        REQUIRE(b.solver.seed == a.solver.seed);
        REQUIRE(b.solver.force_iterative == a.solver.force_iterative);

        REQUIRE(b.oracle_enabled == a.oracle_enabled);
        if (a.oracle_enabled) {
            REQUIRE(b.oracle_n_r == a.oracle_n_r);
            REQUIRE(b.oracle_m_max == a.oracle_m_max);
        }
    }
}

TEST_CASE("the zero potential control runs vacuous and writes its artifacts") {
    ExperimentConfig cfg = make_preset("zero-potential-vacuous");
    cfg.output_dir = "test_out/zero-potential-vacuous";
    std::ostringstream log;
    RunResult r = run_experiment(cfg, log);

    REQUIRE(r.exit_code == 0);
    REQUIRE(r.radius_runs.size() == 1);
    const RadiusRun& rr = r.radius_runs.front();
    REQUIRE(rr.radius == 8.0);
    REQUIRE(rr.cert.overall == Overall::Vacuous);
    REQUIRE(rr.cert.per_k.empty());
    REQUIRE(rr.cert.levels.size() == 2);
    REQUIRE(rr.cert.exact_ordering_holds);
    REQUIRE(rr.cert.counting_holds);
    REQUIRE(rr.cert.traces_ok);
    for (const auto& lev : rr.cert.levels) {
        REQUIRE(lev.weak_values.empty());
        REQUIRE(lev.strong_values.empty());
        REQUIRE(lev.n_free_weak > lev.n_free_strong);
    }
    REQUIRE_FALSE(r.count_growth_checked);
    REQUIRE(log.str().find("verdict vacuous") != std::string::npos);

    write_artifacts(r);
    REQUIRE(r.artifacts.size() == 6);
    for (const auto& path : r.artifacts) {
        INFO("artifact " << path);
        REQUIRE(std::filesystem::exists(path));
    }
    const std::string report = slurp(cfg.output_dir + "/report.txt");
    REQUIRE(report.find("verdict: vacuous") != std::string::npos);
    REQUIRE(report.find("overall exit: 0") != std::string::npos);
    REQUIRE(report.find("no eigenvalues below the ceiling") != std::string::npos);
    const std::string summary = slurp(cfg.output_dir + "/summary.txt");
    REQUIRE(summary.find("exit_code = 0") != std::string::npos);
    REQUIRE(summary.find("radius0.verdict = vacuous") != std::string::npos);
    REQUIRE(summary.find("radius0.k_max = 0") != std::string::npos);
    // nothing below the ceiling, so the tables hold headers only
    REQUIRE(lines_of(slurp(cfg.output_dir + "/gaps.csv")) ==
            std::vector<std::string>{"radius,level,h,k,lambda_weak,lambda_strong,gap"});
    REQUIRE(lines_of(slurp(cfg.output_dir + "/traces.csv")) ==
            std::vector<std::string>{"radius,level,index,trace_norm"});
}

TEST_CASE("the slow decay preset shows eigenvalue counts growing with the radius") {
    ExperimentConfig cfg = make_preset("slow-decay");
    cfg.output_dir = "test_out/slow-decay";
    std::ostringstream log;
    RunResult r = run_experiment(cfg, log);

    REQUIRE(r.radius_runs.size() == 4);
    REQUIRE(r.count_growth_checked);
    REQUIRE(r.count_growth_ok);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.growth_counts == std::vector<int>{0, 1, 3, 4});

    // no eigenvalue below the ceiling at R=8, verdicts vacuous there and holds after
    REQUIRE(r.radius_runs[0].cert.overall == Overall::Vacuous);
    for (std::size_t i = 1; i < 4; ++i) {
        INFO("radius run " << i);
        REQUIRE(r.radius_runs[i].cert.overall == Overall::Holds);
        REQUIRE(r.radius_runs[i].cert.exact_ordering_holds);
        REQUIRE(r.radius_runs[i].cert.counting_holds);
    }

    write_artifacts(r);
    const auto rows = lines_of(slurp(cfg.output_dir + "/counts_by_radius.csv"));
    REQUIRE(rows.size() == 5);
    REQUIRE(rows[0] == "radius,count");
    const std::vector<double> want_r = {8.0, 16.0, 32.0, 64.0};
    const std::vector<int> want_c = {0, 1, 3, 4};
    for (int i = 0; i < 4; ++i) {
        const std::string& row = rows[i + 1];
        const std::size_t comma = row.find(',');
        REQUIRE(comma != std::string::npos);
        REQUIRE(std::stod(row.substr(0, comma)) == want_r[i]);
        REQUIRE(std::stoi(row.substr(comma + 1)) == want_c[i]);
    }
}
