#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geoflow/config.hpp"
#include "geoflow/io.hpp"

using namespace geoflow;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[grid]
n = 64
[symbol]
kind = "bessel"
s = 1.5
[solver]
dt = 0.01
t_end = 0.5
[initial]
modes = [[1, 1.0, 0.0], [3, 0.0, 0.25]]
)";

std::string config_error(const std::string& text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

fs::path temp_dir(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("geoflow_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

TEST(Config, MinimalFileUsesDefaults) {
    const auto cfg = parse_config_text(kMinimal);
    EXPECT_EQ(cfg.n, 64);
    EXPECT_EQ(cfg.solver.symbol.name(), SymbolSpec::bessel(1.5).name());
    EXPECT_DOUBLE_EQ(cfg.solver.dt, 0.01);
    EXPECT_EQ(cfg.solver.record_every, 1);
    EXPECT_EQ(cfg.frame, Frame::eulerian);
    EXPECT_EQ(cfg.label, "run");
    ASSERT_EQ(cfg.initial.size(), 2u);
    EXPECT_EQ(cfg.initial[1], (InitialMode{3, 0.0, 0.25}));
    const auto u0 = cfg.initial_velocity();
    for (int j = 0; j < u0.grid().size(); ++j) {
        const double x = u0.grid().node(j);
        EXPECT_NEAR(u0[j], std::cos(x) + 0.25 * std::sin(3 * x), 1e-15);
    }
}

TEST(Config, DottedKeysMatchSections) {
    const auto a = parse_config_entries("[grid]\nn = 32\n");
    const auto b = parse_config_entries("grid.n = 32\n");
    ASSERT_EQ(a.count("grid.n"), 1u);
    ASSERT_EQ(b.count("grid.n"), 1u);
    EXPECT_EQ(std::get<double>(a.at("grid.n").data), std::get<double>(b.at("grid.n").data));
}

TEST(Config, Errors) {
    const std::string base = kMinimal;
    EXPECT_NE(config_error(base + "[extra]\nfoo = 1\n").find("unknown configuration key"), std::string::npos);
    EXPECT_NE(config_error(base + "[grid]\nn = 32\n").find("duplicate key"), std::string::npos);
    std::string high = base;
    high.replace(high.find("[3, 0.0"), 2, "[30");
    EXPECT_NE(config_error(high).find("mode exceeds dealias band"), std::string::npos);
    std::string clm = base;
    clm.replace(clm.find("kind = \"bessel\""), 15, "kind = \"clm\"");
    clm.replace(clm.find("[1, 1.0"), 2, "[0");
    EXPECT_NE(config_error(clm).find("zero mode not invertible"), std::string::npos);
    std::string bad_dt = base;
    bad_dt.replace(bad_dt.find("dt = 0.01"), 9, "dt = \"x\"");
    EXPECT_NE(config_error(bad_dt).find("solver.dt"), std::string::npos);
    EXPECT_THROW(parse_config("/nonexistent/geoflow.toml"), ConfigError);
}

TEST(Config, EchoRoundTrips) {
    auto cfg = parse_config_text(kMinimal);
    cfg.frame = Frame::both;
    cfg.label = "echo";
    const auto again = parse_config_text(cfg.echo());
    EXPECT_EQ(again.echo(), cfg.echo());
    EXPECT_EQ(again.initial, cfg.initial);
    EXPECT_EQ(again.frame, Frame::both);
    EXPECT_EQ(again.solver.stop.min_slope_floor, cfg.solver.stop.min_slope_floor);
}

TEST(Config, OutputRootOverride) {
    auto cfg = parse_config_text(kMinimal);
    cfg.output_dir = "results";
    ::unsetenv(kOutputRootEnv);
    EXPECT_EQ(cfg.resolved_output_dir(), fs::path("results"));
    ::setenv(kOutputRootEnv, "/tmp/root", 1);
    EXPECT_EQ(cfg.resolved_output_dir(), fs::path("/tmp/root/results"));
    ::unsetenv(kOutputRootEnv);
}

TEST(Io, FormatCell) {
    EXPECT_EQ(format_cell(kMissing), "");
    EXPECT_EQ(format_cell(0.5), "0.5");
    EXPECT_EQ(std::stod(format_cell(0.1)), 0.1);
}

TEST(Io, DiagnosticsCsvIsLossless) {
    std::vector<DiagRow> rows(3);
    for (int i = 0; i < 3; ++i) {
        rows[i].t = 0.1 * i;
        rows[i].energy_A = std::sqrt(2.0) + i;
        rows[i].h_q_norm = 1.0 / 3.0;
        rows[i].min_ux = -std::exp(1.0) * i;
        rows[i].m_l2 = 1e-300;
        rows[i].apriori_residual = i < 2 ? -1.25e-7 : kMissing;
    }
    rows[1].min_phix = 0.875;
    std::stringstream ss;
    write_diagnostics_csv(ss, rows);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), kDiagnosticsHeader);
    const auto back = read_diagnostics_csv(ss);
    ASSERT_EQ(back.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(back[i].t, rows[i].t);
        EXPECT_EQ(back[i].energy_A, rows[i].energy_A);
        EXPECT_EQ(back[i].min_ux, rows[i].min_ux);
        EXPECT_EQ(back[i].m_l2, rows[i].m_l2);
        EXPECT_EQ(std::isnan(back[i].min_phix), std::isnan(rows[i].min_phix));
        EXPECT_EQ(std::isnan(back[i].apriori_residual), i == 2);
    }
    EXPECT_EQ(back[1].min_phix, 0.875);
}

TEST(Io, MalformedCsvThrows) {
    std::stringstream wrong_header("t,energy\n1,2\n");
    EXPECT_THROW(read_diagnostics_csv(wrong_header), Error);
    std::stringstream short_row(std::string(kDiagnosticsHeader) + "\n1,2,3\n");
    EXPECT_THROW(read_diagnostics_csv(short_row), Error);
}

TEST(Io, FinalStateJsonRoundTrip) {
    const auto dir = temp_dir("json");
    FinalState st;
    st.label = "x";
    st.frame = "lagrangian";
    st.symbol = "bessel(2)";
    st.n = 4;
    st.status = RunStatus::stopped_jacobian_floor;
    st.t = 0.30000000000000004;
    st.u = {0.1, -0.2, 1e-17, 3.0};
    st.displacement = std::vector<double>{0.0, 0.5, 0.25, -0.125};
    st.v = std::vector<double>{1.0, 2.0, 3.0, 4.0};
    write_final_state_json(dir / "s.json", st);
    const auto back = read_final_state_json(dir / "s.json");
    EXPECT_EQ(back.label, st.label);
    EXPECT_EQ(back.frame, st.frame);
    EXPECT_EQ(back.symbol, st.symbol);
    EXPECT_EQ(back.n, 4);
    EXPECT_EQ(back.status, st.status);
    EXPECT_EQ(back.t, st.t);
    EXPECT_EQ(back.u, st.u);
    EXPECT_EQ(back.displacement, st.displacement);
    EXPECT_EQ(back.v, st.v);
    fs::remove_all(dir);
}

TEST(Io, SweepSummary) {
    const auto dir = temp_dir("sweep");
    std::vector<SweepRow> rows(2);
    rows[0] = {1.0, "stopped:min_slope", 1.05, 6.1, 1e-12, ""};
    rows[1] = {2.0, "completed", std::nullopt, 1.7, 2e-13, ""};
    write_sweep_summary(dir / "s.csv", rows);
    std::ifstream in(dir / "s.csv");
    std::string header, r0, r1;
    std::getline(in, header);
    std::getline(in, r0);
    std::getline(in, r1);
    EXPECT_EQ(header, kSweepHeader);
    EXPECT_EQ(r0.rfind("1,stopped:min_slope,1.05,", 0), 0u);
    EXPECT_EQ(r1.rfind("2,completed,,", 0), 0u);
    fs::remove_all(dir);
}

}  // namespace
