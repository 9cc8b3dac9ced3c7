// End-to-end tests for the orbspeed executable.  The binary path arrives as
// argv[1] (see tests/CMakeLists.txt); the remaining arguments go to doctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string scratch_path(const char* tag)
{
    std::ostringstream ss;
    ss << "/tmp/orbspeed_cli_test." << getpid() << "." << tag;
    return ss.str();
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
}

// `prefix` may carry environment assignments, e.g. "ORBSPEED_SEED=7 ".
RunResult run_cli(const std::string& args, const std::string& prefix = "")
{
    static int counter = 0;
    std::string out_path = scratch_path(("out" + std::to_string(counter)).c_str());
    std::string err_path = scratch_path(("err" + std::to_string(counter)).c_str());
    ++counter;
    std::string cmd =
        prefix + g_cli + " " + args + " >" + out_path + " 2>" + err_path;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

size_t line_count(const std::string& text)
{
    size_t n = 0;
    for (char c : text)
        if (c == '\n')
            ++n;
    return n;
}

const char* kSector = "sector:0.7853981633974483,0.7853981633974483";

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("speeds: exit 0 and the documented header")
    {
        RunResult r = run_cli("speeds --model halfplane --n 5");
        CHECK(r.code == 0);
        CHECK(r.out.rfind("t,v,v_o,v_T,dist_to_tau,one_minus_mod\n", 0) == 0);
        CHECK(line_count(r.out) == 6);
    }

    TEST_CASE("usage errors exit with 2")
    {
        CHECK(run_cli("speeds --model halfplane --nonsense").code == 2);
        CHECK(run_cli("frobnicate").code == 2);
        CHECK(run_cli("speeds").code == 2);                        // --model required
        CHECK(run_cli("speeds --model sector:9,9").code == 2);     // bad domain
        CHECK(run_cli("speeds --model halfplane --spacing diagonal").code == 2);
    }

    TEST_CASE("orbit of a bound-only model points at the bounds command")
    {
        RunResult r = run_cli("orbit --model parabola:2");
        CHECK(r.code == 2);
        CHECK(r.err.find("bound-only model") != std::string::npos);
        CHECK(r.err.find("bounds") != std::string::npos);

        RunResult b = run_cli("bounds --model parabola:2 --n 10");
        CHECK(b.code == 0);
        CHECK(b.out.rfind("t,lower,upper,method\n", 0) == 0);
    }

    TEST_CASE("verify: pass exits 0, fail exits 1")
    {
        RunResult pass = run_cli("verify pythagoras");
        CHECK(pass.code == 0);
        CHECK(pass.out.find("\"status\": \"pass\"") != std::string::npos);

        // a 20-walk estimate finds no slit hit, so the MC bound collapses
        RunResult fail = run_cli(std::string("verify hall --t 10 --mc-n 20 --model ") +
                                 kSector + " --no-truncation-check");
        CHECK(fail.code == 1);
        CHECK(fail.out.find("\"status\": \"fail\"") != std::string::npos);
    }

    TEST_CASE("orbit CSV output is byte deterministic")
    {
        std::string f1 = scratch_path("orbit1.csv");
        std::string f2 = scratch_path("orbit2.csv");
        std::string args = std::string("orbit --model ") + kSector +
                           " --n 20 --tmax 1000 --out ";
        CHECK(run_cli(args + f1).code == 0);
        CHECK(run_cli(args + f2).code == 0);
        std::string a = slurp(f1), b = slurp(f2);
        CHECK(!a.empty());
        CHECK(a == b);
        CHECK(a.rfind("t,log_rho,theta\n", 0) == 0);
        std::remove(f1.c_str());
        std::remove(f2.c_str());
    }

    TEST_CASE("config file: applied, overridden by flags, typo-checked")
    {
        std::string cfg = scratch_path("speeds.cfg");
        spit(cfg, "# sample config\nmodel=halfplane\nn=7\n");
        RunResult from_cfg = run_cli("speeds --config " + cfg);
        CHECK(from_cfg.code == 0);
        CHECK(line_count(from_cfg.out) == 8); // header + 7 samples

        RunResult overridden = run_cli("speeds --n 3 --config " + cfg);
        CHECK(overridden.code == 0);
        CHECK(line_count(overridden.out) == 4);

        spit(cfg, "model=halfplane\nbogus=1\n");
        RunResult bad = run_cli("speeds --config " + cfg);
        CHECK(bad.code == 2);
        CHECK(bad.err.find("bogus") != std::string::npos);
        std::remove(cfg.c_str());
    }

    TEST_CASE("seed: environment default, flag precedence")
    {
        std::string base = "hm --target theta --a 2 --mc-n 2000 --out -";
        RunResult via_env = run_cli(base, "ORBSPEED_SEED=7 ");
        RunResult via_flag = run_cli(base + " --seed 7");
        RunResult flag_beats_env = run_cli(base + " --seed 7", "ORBSPEED_SEED=9 ");
        CHECK(via_env.code == 0);
        CHECK(via_env.out.find("\"seed\": 7") != std::string::npos);
        CHECK(via_env.out == via_flag.out);
        CHECK(via_env.out == flag_beats_env.out);
    }

    TEST_CASE("fit: sector orthogonal speed grows like log t")
    {
        RunResult r = run_cli(std::string("fit --model ") + kSector +
                              " --quantity v_o --shape log");
        CHECK(r.code == 0);
        CHECK(r.out.find("\"coefficient\": 1.000") != std::string::npos);
    }
}

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-orbspeed-binary> [doctest args]\n",
                     argv[0]);
        return 64;
    }
    g_cli = argv[1];
    std::vector<const char*> args{argv[0]};
    for (int i = 2; i < argc; ++i)
        args.push_back(argv[i]);
    doctest::Context ctx(static_cast<int>(args.size()), args.data());
    return ctx.run();
}
