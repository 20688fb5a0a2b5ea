#include <sstream>

#include "doctest.h"
#include "fwt/config.hpp"
#include "fwt/experiments.hpp"
#include "fwt/query.hpp"

using namespace fwt;

namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.var_g        = {0.75};
    cfg.snr_db       = {0, 30};
    cfg.samples      = 3000;
    cfg.sba_inner    = 50;
    cfg.dual_samples = 2000;
    return cfg;
}

std::size_t lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("config text")
{
    ExperimentConfig cfg;
    apply_config_text(cfg, "# comment\n\nseed = 9\nvar_g = 0.5, 2\nsnr_db=0,5\npolicy = constant # trailing\n"
                           "schemes = esa, sba\nsamples = 100\n");
    CHECK(cfg.seed == 9);
    CHECK(cfg.var_g == std::vector<double>{0.5, 2.0});
    CHECK(cfg.snr_db == std::vector<double>{0.0, 5.0});
    CHECK(cfg.policy == "constant");
    CHECK(cfg.schemes == std::vector<std::string>{"esa", "sba"});
    CHECK(cfg.samples == 100);
    CHECK_NOTHROW(cfg.validate());

    auto message = [](const std::string& text) {
        ExperimentConfig c;
        try {
            apply_config_text(c, text);
        } catch (const std::invalid_argument& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("seed = 1\nbogus = 2\n").find("line 2") != std::string::npos);
    CHECK(message("seed = 1\nbogus = 2\n").find("bogus") != std::string::npos);
    CHECK(message("samples = -3\n").find("line 1") != std::string::npos);
    CHECK(message("var_g = 1,,2\n").find("line 1") != std::string::npos);
    CHECK(message("just words\n").find("key = value") != std::string::npos);

    CHECK_THROWS_AS(apply_config_file(cfg, "/nonexistent/fwt.cfg"), std::invalid_argument);
}

TEST_CASE("config validation")
{
    ExperimentConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.policy = "optimal";
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ExperimentConfig{};
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ExperimentConfig{};
    cfg.dof_powers = {10, 5, 100};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("list parsing")
{
    CHECK(parse_double_list(" 1, 2.5 ,1e3") == std::vector<double>{1.0, 2.5, 1000.0});
    CHECK_THROWS_AS(parse_double_list("1, x"), std::invalid_argument);
    CHECK(parse_name_list("esa,gs_cj") == std::vector<std::string>{"esa", "gs_cj"});
    CHECK(snr_db_to_budget(30.0) == doctest::Approx(1000.0));
}

TEST_CASE("state literals")
{
    const StateLiteral a = parse_state_literal("state(1, -0.5i, 1+2i, 3e-1-2i)");
    REQUIRE(a.states.size() == 1);
    CHECK(a.states[0].h1 == cplx(1, 0));
    CHECK(a.states[0].h2 == cplx(0, -0.5));
    CHECK(a.states[0].g1 == cplx(1, 2));
    CHECK(a.states[0].g2 == cplx(0.3, -2));

    const StateLiteral b = parse_state_literal("state(1,2,1,1); state(2,1,1,1)");
    CHECK(b.states.size() == 2);

    const StateLiteral e = parse_state_literal("eff(2, 0, 1, 0.5)");
    CHECK(e.effective);
    CHECK(e.states[0].h1_sq() * 2 == doctest::Approx(2.0));
    CHECK(e.states[0].g2_sq() * 2 == doctest::Approx(0.5));

    auto column = [](const std::string& text) -> std::size_t {
        try {
            parse_state_literal(text);
        } catch (const ParseError& err) {
            CHECK(err.argument() == "literal");
            return err.column();
        }
        return 0;
    };
    CHECK(column("state(1,1,1 1)") == 13);
    CHECK(column("foo(1,1,1,1)") == 1);
    CHECK(column("state(1,1,1,1) x") == 16);
    CHECK(column("eff(1,-1,1,1)") == 7);
    CHECK(column("state(1,1+2,1,1)") == 9);
}

TEST_CASE("query reports")
{
    const std::string esa = run_query({"state(1,1,1,1)", "esa", "1,1", std::nullopt});
    CHECK(esa.find("rsum=0.423998453") != std::string::npos);

    const std::string sba = run_query({"state(1,2,1,1); state(2,1,1,1)", "sba", "1,1", std::nullopt});
    CHECK(sba.find("rsum=1\n") != std::string::npos);

    const std::string kkt = run_query({"eff(3,3,1,1)", "esa", std::nullopt, "0.1,0.1"});
    CHECK(kkt.find("branch: A.7") != std::string::npos);
    CHECK(kkt.find("P1=4.8232") != std::string::npos);

    const std::string cj = run_query({"eff(5,0.1,1,4)", "esa_cj", std::nullopt, "0.05,0.05"});
    CHECK(cj.find("branch: B.2(d)") != std::string::npos);

    CHECK_THROWS_AS(run_query({"state(1,1,1,1)", "esa", "1,1", "1,1"}), std::invalid_argument);
    CHECK_THROWS_AS(run_query({"state(1,1,1,1)", "sba", "1,1", std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS(run_query({"state(1,1,1,1)", "esa", "1,1,1,1", std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS(run_query({"state(1,1,1,1)", "esa", std::nullopt, "0,1"}), std::invalid_argument);
    CHECK_THROWS_AS(run_query({"state(1,1,1,1)", "gs", "1,1", std::nullopt}), std::invalid_argument);
    try {
        run_query({"state(1,1,1,1)", "esa", "1;1", std::nullopt});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.argument() == "powers");
        CHECK(e.column() == 2);
    }
}

TEST_CASE("figure CSV layout and determinism")
{
    const ExperimentConfig cfg = small_config();
    std::ostringstream a, b;
    write_figure_csv(a, run_figure1(cfg));
    write_figure_csv(b, run_figure1(cfg));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("snr_db,scheme,rsum_bits,stderr,n,var_g,policy,status\n", 0) == 0);
    CHECK(lines(a.str()) == 1 + 2 * 3);
    CHECK(a.str().find("\"gs_cj_baseline(approx)\"") == std::string::npos);
    CHECK(a.str().find("gs_cj_baseline(approx)") != std::string::npos);

    ExperimentConfig other = cfg;
    other.seed             = 2;
    std::ostringstream c;
    write_figure_csv(c, run_figure1(other));
    CHECK(c.str() != a.str());
}

TEST_CASE("figure 2 and DoF runs")
{
    ExperimentConfig cfg = small_config();
    cfg.schemes          = {"esa_cj"};
    const auto rows      = run_figure2(cfg);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].scheme == "esa_cj");
    CHECK(rows[0].policy == "kkt-dual");

    cfg.schemes = {"sba"};
    CHECK_THROWS_AS(run_figure2(cfg), std::invalid_argument);

    cfg.schemes    = {"esa"};
    cfg.dof_powers = {1e2, 1e3, 1e4};
    std::ostringstream os;
    write_dof_csv(os, run_dof(cfg));
    CHECK(os.str().rfind("scheme,var_g,power,rsum_bits,stderr,n,eta_hat,bound_bits,bound_stderr,status\n", 0) == 0);
    CHECK(lines(os.str()) == 4);
}
