#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("classchar-cli-" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args) {
    const std::string cmd =
        std::string(CLASSCHAR_BIN) + " " + args + " --cache-dir " + (scratch() / "cache").string() + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string without_timestamp(const std::string& s) {
    std::istringstream in(s);
    std::string out, line;
    while (std::getline(in, line))
        if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
    return out;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("exact claims exit 0") {
    const Run r = run("verify frob --group \"SL(3,2)\"");
    CHECK(r.status == 0);
    CHECK(r.out.find("frob") != std::string::npos);
}

TEST_CASE("walk csv") {
    const Run r = run("walk --group \"SL(3,2)\" --class 1 --exact --format csv");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("N,tv\n0,", 0) == 0);
}

TEST_CASE("thompson witness") {
    const Run r = run("thompson --group \"SL(3,2)\"");
    CHECK(r.status == 0);
    CHECK(r.out == "4\n");
}

TEST_CASE("json output carries the report schema") {
    const Run r = run("verify sandwich --group \"Sp(4,2)\" --format json");
    CHECK(r.status == 0);
    CHECK(r.out.find("classchar.report/1") != std::string::npos);
}

TEST_CASE("sampling without a seed is an error") {
    const Run r = run("verify aprods --group \"SL(3,2)\"");
    CHECK(r.status == 2);
    CHECK(r.out.find("--seed") != std::string::npos);
}

TEST_CASE("bad group spec") {
    const Run r = run("group --group \"XY(3,2)\"");
    CHECK(r.status == 2);
    CHECK(r.out.rfind("error:", 0) == 0);
}

TEST_CASE("roster config errors name the line") {
    const fs::path cfg = scratch() / "bad.cfg";
    write(cfg, "groups = SL(2,2)\nnot a pair\n");
    const Run r = run("roster --config " + cfg.string() + " --out " + (scratch() / "bad").string());
    CHECK(r.status == 2);
    CHECK(r.out.find(cfg.string() + ":2:") != std::string::npos);
}

TEST_CASE("roster bundles are reproducible") {
    const fs::path cfg = scratch() / "small.cfg";
    write(cfg, "# two small groups\ngroups = SL(2,3), SL(3,2)\nseed = 5\ntrials = 2000\n");
    const fs::path a = scratch() / "a", b = scratch() / "b";
    CHECK(run("roster --config " + cfg.string() + " --out " + a.string()).status == 0);
    CHECK(run("roster --config " + cfg.string() + " --out " + b.string()).status == 0);
    const std::string ja = slurp(a / "bundle.json"), jb = slurp(b / "bundle.json");
    CHECK(ja.find("classchar.bundle/1") != std::string::npos);
    CHECK(without_timestamp(ja) == without_timestamp(jb));
    CHECK(fs::exists(a / "walk_curves_SL_3_2_.csv"));
    CHECK(slurp(a / "thmA.csv") == slurp(b / "thmA.csv"));
    fs::remove_all(scratch());
}
