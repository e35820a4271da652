// End-to-end checks of the command line: exit codes, determinism, plotting.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int failures = 0;

#define EXPECT(cond, msg)                                     \
    do {                                                      \
        if (!(cond)) {                                        \
            std::cerr << "FAIL: " << msg << "\n";             \
            ++failures;                                       \
        }                                                     \
    } while (0)

int run_cli(const std::string& args) {
    std::string cmd = std::string(TOPODYN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string capture_cli(const std::string& args) {
    std::string cmd = std::string(TOPODYN_CLI_PATH) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
    return out;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p);
    f << content;
}

nlohmann::json load_report(const fs::path& dir) {
    std::ifstream in(dir / "report.json");
    return nlohmann::json::parse(in);
}

} // namespace

int main() {
    fs::path tmp = fs::temp_directory_path() / "topodyn_cli_e2e";
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    // holds-at-horizon -> exit 0
    write_file(tmp / "wm_full.cfg",
               "[experiment]\noperation = weak-mixing-test\nfixture = full-2-shift\ndepth = 2\n"
               "horizon = 16\noutput = " + (tmp / "out1").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "wm_full.cfg").string()) == 0, "weak mixing on the full shift exits 0");

    // fails-at-horizon -> exit 1, witness recorded
    write_file(tmp / "wm_rot.cfg",
               "[experiment]\noperation = weak-mixing-test\nfixture = golden-rotation\ndepth = 3\n"
               "horizon = 400\noutput = " + (tmp / "out2").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "wm_rot.cfg").string()) == 1, "weak mixing on the rotation exits 1");
    {
        auto rep = load_report(tmp / "out2");
        EXPECT(rep["result"]["verdict"] == "fails-at-horizon", "rotation verdict serialized");
        EXPECT(!rep["result"]["witness"].get<std::string>().empty(), "witness pair present");
    }

    // malformed config -> exit 3
    write_file(tmp / "bad.cfg", "operation = ?\n");
    EXPECT(run_cli("run " + (tmp / "bad.cfg").string()) == 3, "malformed config exits 3");
    write_file(tmp / "unknown_key.cfg",
               "[experiment]\noperation = transitivity-test\nfixture = full-2-shift\nbanana = 1\n");
    EXPECT(run_cli("run " + (tmp / "unknown_key.cfg").string()) == 3, "unknown keys are rejected");
    EXPECT(run_cli("run " + (tmp / "missing.cfg").string()) == 3, "missing config exits 3");

    // list-fixtures includes the documented names
    std::string fixtures = capture_cli("list-fixtures");
    for (const char* name : {"full-2-shift", "newprop-10", "wedge-fullshift"})
        EXPECT(fixtures.find(name) != std::string::npos, std::string("fixture list includes ") + name);

    // determinism: identical config -> identical report minus wall clock
    write_file(tmp / "det.cfg",
               "[experiment]\noperation = lyapunov\nfixture = full-2-shift\ndepth = 3\nhorizon = 16\n"
               "burn_in = 8\nk = 3\noutput = " + (tmp / "det1").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "det.cfg").string()) == 0, "lyapunov run exits 0");
    auto rep1 = load_report(tmp / "det1");
    EXPECT(run_cli("run " + (tmp / "det.cfg").string()) == 0, "second lyapunov run exits 0");
    auto rep2 = load_report(tmp / "det1");
    rep1.erase("runtime_ms");
    rep2.erase("runtime_ms");
    EXPECT(rep1 == rep2, "reports byte-identical modulo wall clock");
    EXPECT(rep1["result"]["L_md"] == 1.0, "lyapunov L_md value in report");

    // verify-newprop through the CLI, plus its mutated control
    write_file(tmp / "np.cfg",
               "[experiment]\noperation = verify-newprop\nbase = 10\nn_max = 5\nfixture = newprop-10\n"
               "output = " + (tmp / "np").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "np.cfg").string()) == 0, "newprop verification exits 0");
    write_file(tmp / "npm.cfg",
               "[experiment]\noperation = verify-newprop\nbase = 10\nn_max = 5\nmutated = true\n"
               "fixture = newprop-10\noutput = " + (tmp / "npm").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "npm.cfg").string()) == 1, "mutated control exits 1");

    // entropy run emits a plot-ready series
    write_file(tmp / "ent.cfg",
               "[experiment]\noperation = seq-entropy\nfixture = full-2-shift\nk_max = 8\n"
               "eps_list = 3/10\noutput = " + (tmp / "ent").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "ent.cfg").string()) == 0, "entropy run exits 0");
    EXPECT(fs::exists(tmp / "ent" / "sep_profile.csv"), "sep profile side file written");
    std::string plot = capture_cli("plot " + (tmp / "ent" / "report.json").string() + " sep");
    EXPECT(plot.rfind("k,log_sep\n", 0) == 0, "plot extraction produces CSV");
    EXPECT(run_cli("plot " + (tmp / "ent" / "report.json").string() + " nope") == 3,
           "missing series exits 3");

    // lyapunov sweep + plot series
    write_file(tmp / "sweep.cfg",
               "[experiment]\noperation = lyapunov-sweep\nfixture = skew-product\ndepth = 3\n"
               "horizon = 32\nk = 2\noutput = " + (tmp / "sweep").string() + "\n");
    EXPECT(run_cli("run " + (tmp / "sweep.cfg").string()) == 0, "lyapunov sweep exits 0");
    std::string sweep_csv = capture_cli("plot " + (tmp / "sweep" / "report.json").string() + " lyapunov-sweep");
    EXPECT(sweep_csv.rfind("horizon,L_d\n", 0) == 0, "sweep series extracted");

    // config caps are hard errors
    write_file(tmp / "cap.cfg",
               "[experiment]\noperation = transitivity-test\nfixture = full-2-shift\ndepth = 2\n"
               "horizon = 500\noutput = " + (tmp / "cap").string() + "\n[limits]\nmax_horizon = 100\n");
    EXPECT(run_cli("run " + (tmp / "cap.cfg").string()) == 3, "exceeding a configured cap exits 3");

    if (failures == 0) {
        std::cout << "cli e2e: all checks passed\n";
        return 0;
    }
    std::cerr << failures << " cli e2e failures\n";
    return 1;
}
