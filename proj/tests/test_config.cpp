#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "pdem/commands.hpp"

using namespace pdem;

namespace {

const char* kInstanceC = R"(# instance C
mass.kind = I
mass.alpha = 1
mass.beta = 0
mass.gamma = 1
mass.delta = 1     # sqrt(Delta)/2
reference.kind = STP
reference.mu = 2
levels = 4
grid.N = auto
)";

struct Run {
    int code;
    std::string out;
    std::string err;
};

template <class F>
Run run(F&& cmd, CorrectionConvention conv = CorrectionConvention::quarter) {
    std::ostringstream out, err;
    CommandContext ctx{out, err, conv};
    const int code = cmd(ctx);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config_string(kInstanceC);
    CHECK(c.mass_kind == MassKind::I);
    CHECK(c.mass.delta == 1.0);
    CHECK(c.reference_kind == ReferenceKind::STP);
    CHECK(c.mu == 2.0);
    CHECK(c.n == 0);
    CHECK(c.isospectral_tolerance() == 1e-5);
    CHECK(c.format == OutputFormat::csv);

    const RunConfig k2 = parse_config_string(
        "mass.kind = II\nmass.alpha = 4\nmass.beta = 1\nmass.gamma = 1\nreference.kind = PTP\n"
        "reference.chi = 2\nreference.lambda = 3\ngrid.N = 5000\noutput.format = json\n");
    CHECK(k2.isospectral_tolerance() == 5e-3);
    CHECK(k2.n == 5000);
    CHECK(k2.lambda == 3.0);
    CHECK(k2.format == OutputFormat::json);
}

TEST_CASE("config rejections") {
    const std::string base(kInstanceC);
    CHECK_THROWS_AS(parse_config_string(base + "mass.epsilon = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(base + "levels = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(base + "reference.chi = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(base + "grid.eps_map = 0.001x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(base + "just a line\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string("mass.kind = IV\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string("mass.kind = I\nmass.alpha = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string(base + "mode = loose\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_string("mass.kind = III\nmass.alpha = 3\nmass.beta = 1\nmass.gamma = 1\n"
                                        "reference.kind = STP\nreference.mu = 0.5\n"),
                    DomainError);
}

TEST_CASE("validate reports violations") {
    RunConfig ok = parse_config_string(kInstanceC);
    CHECK(run([&](CommandContext& c) { return cmd_validate(ok, c); }).code == exit_ok);

    RunConfig bad = ok;
    bad.mass = {1.0, 3.0, 1.5, 1.0};
    const Run r = run([&](CommandContext& c) { return cmd_validate(bad, c); });
    CHECK(r.code == exit_invalid);
    CHECK(r.err.find("Delta > 0") != std::string::npos);
    CHECK(r.out.find("Delta > 0") != std::string::npos);

    RunConfig strict = ok;
    strict.mass.delta = 2.0;
    const Run s = run([&](CommandContext& c) { return cmd_validate(strict, c); });
    CHECK(s.code == exit_invalid);
    CHECK(s.err.find("delta = sqrt(Delta)/2") != std::string::npos);
    strict.mode = Mode::scaled;
    CHECK(run([&](CommandContext& c) { return cmd_validate(strict, c); }).code == exit_ok);
}

TEST_CASE("spectrum command") {
    RunConfig c = parse_config_string(kInstanceC);
    c.levels = 5;
    const Run r = run([&](CommandContext& ctx) { return cmd_spectrum(c, ctx); });
    CHECK(r.code == 0);
    CHECK(r.out == "k,energy,parity\n0,2,even\n1,7,odd\n2,14,even\n3,23,odd\n4,34,even\n");

    c.reference_kind = ReferenceKind::PTP;
    c.chi = c.lambda = 2.0;
    c.mass.delta = 0.5;
    c.levels = 3;
    c.format = OutputFormat::json;
    const Run p = run([&](CommandContext& ctx) { return cmd_spectrum(c, ctx); });
    const json j = json::parse(p.out);
    CHECK(j["levels"][2]["energy"] == 64.0);
}

TEST_CASE("build-target CSV round trip and determinism") {
    RunConfig c = parse_config_string(kInstanceC);
    c.samples = 50;
    const Run a = run([&](CommandContext& ctx) { return cmd_build_target(c, ctx); });
    const Run b = run([&](CommandContext& ctx) { return cmd_build_target(c, ctx); });
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find('\r') == std::string::npos);

    const auto rows = split_csv(a.out);
    REQUIRE(rows.size() == 51);
    CHECK(rows[0] == std::vector<std::string>{"z", "m", "f", "U_target", "psi_0", "psi_1", "psi_2", "psi_3"});
    const TargetSystem ts = build_target(c);
    const TransportedState psi2(ts, 2);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double z = std::strtod(rows[i][0].c_str(), nullptr);
        CHECK(std::strtod(rows[i][1].c_str(), nullptr) == mass_value(ts.profile(), z));
        CHECK(std::strtod(rows[i][2].c_str(), nullptr) == map_forward(ts.profile(), z));
        CHECK(std::strtod(rows[i][3].c_str(), nullptr) == target_potential(ts, z));
        CHECK(std::strtod(rows[i][6].c_str(), nullptr) == psi2(z));
        CHECK(std::abs(std::strtod(rows[i][3].c_str(), nullptr) + 1.0) <= 1e-12);
    }
}

TEST_CASE("build-target JSON for a vanishing mass") {
    RunConfig c = parse_config_string(
        "mass.kind = III\nmass.alpha = 3\nmass.beta = 1\nmass.gamma = 1\nreference.kind = STP\nreference.mu = 2\n"
        "levels = 2\noutput.format = json\noutput.samples = 21\n");
    const Run r = run([&](CommandContext& ctx) { return cmd_build_target(c, ctx); });
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["mass_kind"] == "III");
    CHECK(j["samples"]["z"].size() == 21);
    const MassProfile m3(MassKind::III, {3, 1, 1});
    for (int i = 0; i < 21; ++i) {
        const double z = j["samples"]["z"][i];
        if (std::abs(z) < 1e-3) continue;  // the middle sample sits next to the zero of m
        CHECK(double(j["samples"]["U_target"][i]) ==
              Catch::Approx(2 * std::pow(z, 6) + mass_correction(m3, z)).epsilon(1e-13));
    }
}

TEST_CASE("verify exit codes") {
    RunConfig c = parse_config_string(kInstanceC);
    const Run ok = run([&](CommandContext& ctx) { return cmd_verify(c, ctx); });
    CHECK(ok.code == exit_ok);
    CHECK(split_csv(ok.out).size() == 5);
    const Run bad = run([&](CommandContext& ctx) { return cmd_verify(c, ctx); }, CorrectionConvention::eighth);
    CHECK(bad.code == exit_tolerance);
    CHECK(bad.err.find("FAIL") != std::string::npos);

    c.format = OutputFormat::json;
    c.levels = 2;
    const json j = json::parse(run([&](CommandContext& ctx) { return cmd_verify(c, ctx); }).out);
    for (const char* key : {"rows", "residual_norms", "gram_defect", "norm_defects", "node_counts",
                            "node_counts_numeric", "convergence", "isospectral_tolerance", "passed"})
        CHECK(j.contains(key));
    CHECK(j["convergence"].contains("n_coarse"));
    CHECK(j["rows"][1]["e_analytic"] == 7.0);
}

TEST_CASE("compare-paper exit codes") {
    RunConfig c = parse_config_string(kInstanceC);
    const Run r = run([&](CommandContext& ctx) { return cmd_compare_paper(c, "Eq14", ctx); });
    CHECK(r.code == exit_ok);
    CHECK(r.err.find("Eq14") != std::string::npos);
    CHECK(run([&](CommandContext& ctx) { return cmd_compare_paper(c, "Eq32", ctx); }).code == exit_invalid);
    CHECK(run([&](CommandContext& ctx) { return cmd_compare_paper(c, "Eq99", ctx); }).code == exit_invalid);
}

TEST_CASE("sample configs load") {
    for (const char* name : {"instance_c", "instance_c_mu3", "kind1_scp", "kind1_ptp", "kind2_scp", "kind3_stp",
                             "kind1_scaled", "invalid_delta", "strict_mismatch", "kind2_stp_for_eq32"}) {
        INFO(name);
        CHECK_NOTHROW(load_config(std::string(PDEM_SAMPLES_DIR) + "/" + name + ".cfg"));
    }
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}
