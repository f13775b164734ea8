#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <sys/wait.h>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string command = std::string(GRIPKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer{};
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

fs::path data(const char* name) { return fs::path(GRIPKIT_DATA_DIR) / name; }

fs::path temp_file(const char* name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("deflect reports the canonical tip deflection") {
    const RunResult result =
        run("--config " + data("gripper_fhr80.cfg").string() + " deflect --q 0.01");
    REQUIRE(result.exit_code == 0);
    // config n_segments = 36; summary JSON follows the profile CSV on stdout
    const std::size_t brace = result.output.find('{');
    REQUIRE(brace != std::string::npos);
    const json summary = json::parse(result.output.substr(brace));
    CHECK(summary.at("schema_version") == 1);
    CHECK(summary.at("interpretation") == "paper");
    CHECK(summary.at("flow_mode") == "total");
    const double expected = 3.0 * 1.225 * 1e-4 * 1e-6 /
                            (8e-9 * 5e6 * 4.9e-3 * std::pow(std::cos(0.5235987755982988), 3) *
                             std::pow(2.0 * std::numbers::pi / 36.0, 2));
    CHECK(std::abs(summary.at("y_tip_m").get<double>() - expected) / expected < 1e-12);
}

TEST_CASE("deflect with --format csv prints only the profile") {
    const RunResult result = run("--format csv deflect --q 0.01 --samples 5");
    REQUIRE(result.exit_code == 0);
    CHECK(result.output.rfind("x_m,y_m", 0) == 0);
    CHECK(result.output.find('{') == std::string::npos);
}

TEST_CASE("operate emits the linear fixed point") {
    const RunResult result = run("operate --power 0.4 --c0 1e-6");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.output);
    CHECK(report.at("p_stall_pa") == doctest::Approx(16400.0));
    // default blower: q_free(0.4) = 0.016
    const double dp = report.at("dp_op_pa").get<double>();
    const double expected = 16400.0 / (1.0 + 1e-6 * 16400.0 / 0.016);
    CHECK(dp == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("grasp produces a per-object report") {
    const RunResult result = run("--config " + data("gripper_fhr80.cfg").string() +
                                 " grasp --objects " + data("objects_default.csv").string() +
                                 " --power 0.4");
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.output);
    CHECK(report.at("objects").size() == 6);
    for (const json& entry : report.at("objects")) {
        CHECK(entry.contains("stage"));
        CHECK(entry.at("dp_op_pa").get<double>() >= 0.0);
        CHECK(entry.at("mhf_n").get<double>() >= 0.0);
    }
    // the egg is narrower than the aperture, the brick wider
    for (const json& entry : report.at("objects")) {
        if (entry.at("name") == "egg") CHECK(entry.at("contact") == "self-closure");
        if (entry.at("name") == "brick") CHECK(entry.at("contact") == "full-interface");
    }
}

TEST_CASE("fit calibrates the bundled scenario") {
    const RunResult result = run("--config " + data("gripper_fhr80.cfg").string() +
                                 " fit --observations " +
                                 data("observations_default.csv").string() + " --objects " +
                                 data("objects_default.csv").string());
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.output);
    CHECK(report.at("converged") == true);
    CHECK(report.at("residual_norm").get<double>() < 1e-6);
}

TEST_CASE("sweep emits a CSV grid and exponents") {
    const RunResult grid = run("sweep --parameter power --from 0.1 --to 1.0 --steps 5");
    REQUIRE(grid.exit_code == 0);
    CHECK(grid.output.find("parameter,value,y_tip_m,dp_op_pa,q_op_m3s,mhf_n") == 0);

    const RunResult exps = run("sweep --exponents");
    REQUIRE(exps.exit_code == 0);
    const json report = json::parse(exps.output);
    CHECK(report.at("exponents").at("q").get<double>() == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(report.at("exponents").at("d_theta").get<double>() ==
          doctest::Approx(-2.0).epsilon(1e-6));
}

TEST_CASE("trace extracts MHF and plateau, multiple files at once") {
    std::string force_csv = "t_s,force_n\n";
    for (int k = 0; k <= 50; ++k)
        force_csv += std::to_string(0.1 * k) + "," + std::to_string(2.0 * k) + "\n";
    force_csv += "5.1,3\n5.2,3\n";
    const fs::path force = temp_file("gripkit_cli_force.csv", force_csv);

    std::string flow_csv = "t_s,flow_m3h\n";
    for (int k = 0; k <= 50; ++k) flow_csv += std::to_string(0.1 * k) + ",7.4\n";
    const fs::path flow = temp_file("gripkit_cli_flow.csv", flow_csv);

    const RunResult result =
        run("trace --input " + force.string() + " --input " + flow.string());
    REQUIRE(result.exit_code == 0);
    const json report = json::parse(result.output);
    REQUIRE(report.at("results").size() == 2);
    CHECK(report.at("results")[0].at("mhf_n") == doctest::Approx(100.0));
    CHECK(report.at("results")[1].at("q_m3s") == doctest::Approx(7.4 / 3600.0).epsilon(1e-12));
    CHECK(report.at("results")[1].at("stable") == true);
}

TEST_CASE("exit code 2 for validation errors") {
    const fs::path bad_config = temp_file("gripkit_cli_bad.cfg", "r_m = 0.05\nR_m = 0.04\n");
    CHECK(run("--config " + bad_config.string() + " deflect").exit_code == 2);

    const fs::path bad_trace = temp_file("gripkit_cli_bad_trace.csv", "t_s,f_n\n1,1\n1,2\n");
    CHECK(run("trace --input " + bad_trace.string()).exit_code == 2);

    CHECK(run("operate --power 1.5").exit_code == 2);
    CHECK(run("definitely-not-a-subcommand").exit_code == 2);
    CHECK(run("grasp --objects /nonexistent.csv").exit_code == 2);
}

TEST_CASE("exit code 3 when the operating-point solver cannot reach tolerance") {
    // An absurd stall pressure keeps the bisection interval above the pinned
    // 1e-6 Pa tolerance for the whole 200-iteration budget.
    const fs::path config = temp_file("gripkit_cli_huge.cfg", "p_stall_max_pa = 1e60\n");
    CHECK(run("--config " + config.string() + " operate --power 1 --c0 1e-6").exit_code == 3);
}

TEST_CASE("reports can be written into an output directory") {
    const fs::path out_dir = fs::temp_directory_path() / "gripkit_cli_out";
    fs::remove_all(out_dir);
    const RunResult result = run("--out " + out_dir.string() + " deflect --q 0.01");
    REQUIRE(result.exit_code == 0);
    CHECK(fs::exists(out_dir / "deflect_profile.csv"));
    CHECK(fs::exists(out_dir / "deflect_summary.json"));
    std::ifstream summary(out_dir / "deflect_summary.json");
    const json parsed = json::parse(summary);
    CHECK(parsed.contains("y_tip_m"));
}
