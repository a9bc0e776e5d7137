#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef SCMN_CLI_BIN
#error "SCMN_CLI_BIN must point at the built binary"
#endif

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SCMN_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
        r.output.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_weak_channel(const std::string& path) {
    std::ofstream f(path);
    f << R"({"name":"weak","x_grid_size":64,"eps_grid":[)";
    for (int r = 0; r < 11; ++r) f << (r ? "," : "") << r / 10.0;
    f << R"(],"phi_tables":[)";
    for (int r = 0; r < 11; ++r) {
        f << (r ? ",[" : "[");
        for (int c = 0; c < 64; ++c) {
            f << (c ? "," : "") << 0.5 * (r / 10.0) * (c / 63.0);
        }
        f << "]";
    }
    f << "]}";
}

}  // namespace

TEST_CASE("sir-limit prints the analytic values") {
    auto bec = run_cli("sir-limit --channel bec --rate 0.5");
    CHECK(bec.exit_code == 0);
    CHECK(bec.output == "0.500000\n");

    auto dec = run_cli("sir-limit --channel dec --rate 0.5");
    CHECK(dec.exit_code == 0);
    CHECK(dec.output == "0.640388\n");
}

TEST_CASE("rate worked example") {
    auto r = run_cli("rate --dl 6 --dr 3 --dg 3 --L 50 --w 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "0.480625\n");
}

TEST_CASE("sc-de reports the decoded flag") {
    auto lo = run_cli("sc-de --channel bec --L 16 --w 2 --eps 0.2 --max-iter 2000");
    CHECK(lo.exit_code == 0);
    CHECK(lo.output.find("decoded=1") == 0);
    auto hi = run_cli("sc-de --channel bec --L 16 --w 2 --eps 0.9 --max-iter 2000");
    CHECK(hi.exit_code == 0);
    CHECK(hi.output.find("decoded=0") == 0);
}

TEST_CASE("validation exit codes") {
    auto bad_degrees = run_cli("rate --dl 2 --dr 3 --dg 2 --L 10 --w 1");
    CHECK(bad_degrees.exit_code == 2);
    CHECK(bad_degrees.output.find("d_l") != std::string::npos);

    auto unknown = run_cli("sir --channel missing_channel.json --eps 0.4");
    CHECK(unknown.exit_code == 4);  // unreadable config

    auto missing_flag = run_cli("sir-limit --channel bec");
    CHECK(missing_flag.exit_code == 2);  // --rate is required
}

TEST_CASE("no-solution exit code") {
    write_weak_channel("weak_cli.json");
    auto r = run_cli("sir-limit --channel weak_cli.json --rate 0.5");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("no eps") != std::string::npos);
    std::remove("weak_cli.json");
}

TEST_CASE("corrupted channel config is rejected with the cell index") {
    {
        std::ofstream f("bad_cli.json");
        f << R"({"name":"bad","x_grid_size":64,"eps_grid":[0,0.5,1],"phi_tables":[)";
        for (int r = 0; r < 3; ++r) {
            f << (r ? ",[" : "[");
            for (int c = 0; c < 64; ++c) {
                double v = (r / 2.0) * (c / 63.0);
                if (r == 1 && c == 20) v = 0.9;  // breaks x-monotonicity
                f << (c ? "," : "") << v;
            }
            f << "]";
        }
        f << "]}";
    }
    auto r = run_cli("sir --channel bad_cli.json --eps 0.4");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("phi_tables[1][21]") != std::string::npos);
    std::remove("bad_cli.json");
}

TEST_CASE("io error exit code") {
    auto r = run_cli(
        "potential-curve --channel bec --grid 128 -o /nonexistent_dir_scmn/c.csv");
    CHECK(r.exit_code == 4);
}

TEST_CASE("binary-level determinism of curve output") {
    auto a = run_cli("potential-curve --channel dec --grid 256 -o cli_a.csv");
    auto b = run_cli("potential-curve --channel dec --grid 256 -o cli_b.csv");
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
    std::remove("cli_a.csv");
    std::remove("cli_b.csv");
}

TEST_CASE("lemma-style csv comparison through the cli") {
    auto dec = run_cli("potential-curve --channel dec --grid 512 -o cli_dec.csv");
    auto bec = run_cli("potential-curve --channel bec --grid 512 -o cli_bec.csv");
    REQUIRE(dec.exit_code == 0);
    REQUIRE(bec.exit_code == 0);
    std::ifstream fd("cli_dec.csv"), fb("cli_bec.csv");
    std::string ld, lb;
    // skip comments + header
    for (int i = 0; i < 3; ++i) {
        std::getline(fd, ld);
        std::getline(fb, lb);
    }
    int compared = 0;
    while (std::getline(fd, ld) && std::getline(fb, lb)) {
        // columns: x1,x2,psi,phi_bracket,eps,U,valid
        const auto split = [](const std::string& s) {
            std::vector<std::string> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(item);
            return out;
        };
        const auto cd = split(ld);
        const auto cb = split(lb);
        REQUIRE(cd.size() == 7);
        REQUIRE(cb.size() == 7);
        if (cd[6] == "1" && cb[6] == "1") {
            CHECK(std::stod(cd[5]) >= std::stod(cb[5]) - 1e-12);
            ++compared;
        }
    }
    CHECK(compared > 200);
    std::remove("cli_dec.csv");
    std::remove("cli_bec.csv");
}

TEST_CASE("verify suite passes end to end") {
    auto r = run_cli("verify --grid 4096");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("checks passed") != std::string::npos);
}
