#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int rc;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(GBSN_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const fs::path& work_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "gbsn_cli_tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    fs::path p = work_dir() / name;
    std::ofstream f(p);
    f << content;
    f.close();
    return p.string();
}

std::string bs2_file() { return write_file("bs2.gbs", "hnn rank=1 phi=[[2]]\n"); }

} // namespace

TEST_CASE("usage errors exit with code two") {
    CHECK(run("").rc == 2);
    CHECK(run("frobnicate").rc == 2);
    CHECK(run("validate").rc == 2);
    CHECK(run("--help").rc == 0);
    CHECK(run("validate " + work_dir().string() + "/does_not_exist.gbs").rc == 2);
}

TEST_CASE("validate") {
    std::string good = bs2_file();
    RunResult ok = run("validate " + good);
    CHECK(ok.rc == 0);
    CHECK(ok.out == "ok\n");

    json j = json::parse(run("validate --json " + good).out);
    CHECK(j["valid"] == true);

    std::string bad = write_file("disconnected.gbs", "gbs rank=1\nvertex a\nvertex b\n");
    RunResult r = run("validate " + bad);
    CHECK(r.rc == 1);
    CHECK(r.out.find("Disconnected") != std::string::npos);
    json jb = json::parse(run("validate --json " + bad).out);
    CHECK(jb["valid"] == false);

    std::string mangled = write_file("mangled.gbs", "gbs rank=1\nwat\n");
    RunResult m = run("validate " + mangled);
    CHECK(m.rc == 2);
    CHECK(m.out.find("line 2") != std::string::npos);
}

TEST_CASE("presentation") {
    RunResult r = run("presentation " + bs2_file());
    CHECK(r.rc == 0);
    CHECK(r.out == "generators: a t\nrelators:\n  t a t^-1 = a^2\n");
    json j = json::parse(run("presentation --json " + bs2_file()).out);
    CHECK(j["generators"] == json::array({"a", "t"}));

    // other subcommands refuse graphs that fail validation
    std::string bad = write_file("disconnected.gbs", "gbs rank=1\nvertex a\nvertex b\n");
    CHECK(run("presentation " + bad).rc == 1);
}

TEST_CASE("monodromy") {
    std::string lm = write_file("lm.gbs", run("examples leary-minasyan").out);
    RunResult r = run("monodromy " + lm);
    CHECK(r.rc == 0);
    CHECK(r.out == "generators (1):\n  e1: [[3/5,-4/5],[4/5,3/5]]\nclassification: infinite\n");

    std::string rot = write_file("rot.gbs", "hnn rank=2 phi=[[0,-1],[1,0]]\n");
    CHECK(run("monodromy " + rot).out.find("classification: finite of order 4") != std::string::npos);
    CHECK(run("monodromy --cap 2 " + rot).out.find("inconclusive (cap 2)") != std::string::npos);

    json j = json::parse(run("monodromy --json " + lm).out);
    CHECK(j["classification"]["kind"] == "infinite");
}

TEST_CASE("properties") {
    RunResult bs = run("properties " + bs2_file());
    CHECK(bs.rc == 0);
    CHECK(bs.out.find("VRC: no") != std::string::npos);
    CHECK(bs.out.find("RF: yes") != std::string::npos);
    CHECK(bs.out.find("GR: yes") != std::string::npos);

    std::string id2 = write_file("id2.gbs", "hnn rank=2 phi=[[1,0],[0,1]]\n");
    RunResult idr = run("properties " + id2);
    CHECK(idr.out.find("VRC: yes") != std::string::npos);
    CHECK(idr.out.find("witness lattice: [[1,0],[0,1]]") != std::string::npos);

    json j = json::parse(run("properties --json " + bs2_file()).out);
    REQUIRE(j.size() == 4);
    CHECK(j[2]["property"] == "RF");
    CHECK(j[2]["answer"] == "yes");
}

TEST_CASE("normalize") {
    std::string f = bs2_file();
    CHECK(run("normalize " + f + " t a t^-1").out == "a^2\n");
    CHECK(run("normalize " + f + " t^-1 a t").out == "t^-1 a t\n");
    CHECK(run("normalize " + f + " a a^-1").out == "1\n");
    json j = json::parse(run("normalize --json " + f + " t a t^-1").out);
    CHECK(j["word"] == "a^2");
    CHECK(j["vector"] == json::array({"2"}));

    // a word with an unknown letter is a parse failure
    CHECK(run("normalize " + f + " q").rc == 2);
    // graphs that are not one ascending loop are a domain failure
    std::string lm = write_file("lm.gbs", run("examples leary-minasyan").out);
    CHECK(run("normalize " + lm + " t").rc == 1);
}

TEST_CASE("quotient") {
    std::string f = bs2_file();
    RunResult r = run("quotient " + f + " -p 3 -l 2");
    CHECK(r.rc == 0);
    CHECK(r.out.find("stable letter order r = 6") != std::string::npos);
    CHECK(r.out.find("group order = 54") != std::string::npos);
    CHECK(r.out.find("image order") == std::string::npos);

    RunResult img = run("quotient " + f + " -p 3 -l 2 a t");
    CHECK(img.out.find("image order = 54 (index 1)") != std::string::npos);

    std::string sub = write_file("sub_a3_t.txt", "a^3\nt\n");
    RunResult proper = run("quotient " + f + " -p 3 -l 1 --subgroup " + sub);
    CHECK(proper.out.find("image order = 2 (index 3)") != std::string::npos);

    json j = json::parse(run("quotient --json " + f + " -p 3 -l 1 a t").out);
    CHECK(j["group_order"] == "6");
    CHECK(j["image"]["index"] == "1");

    CHECK(run("quotient " + f + " -p 4 -l 1").rc == 1);
    CHECK(run("quotient " + f + " -p 2 -l 1").rc == 1);
    CHECK(run("quotient " + f + " -p 3 -l 0").rc == 1);
    CHECK(run("quotient " + f + " -l 1").rc == 2);
    RunResult tight = run("quotient " + f + " -p 3 -l 2 --enumeration-budget 10 a t");
    CHECK(tight.rc == 1);
}

TEST_CASE("certificate") {
    std::string f = bs2_file();
    std::string just_a = write_file("sub_a.txt", "a\n");
    RunResult found = run("certificate " + f + " " + just_a);
    CHECK(found.rc == 0);
    CHECK(found.out.find("certificate found (verified by replay):") != std::string::npos);
    CHECK(found.out.find("height quotient Z/2") != std::string::npos);
    CHECK(found.out.find("height: proper image modulo 2") != std::string::npos);

    std::string full = write_file("sub_full.txt", "a\nt\n");
    RunResult none = run("certificate " + f + " " + full);
    CHECK(none.rc == 0);
    CHECK(none.out.find("no certificate found within budget (proves nothing)") != std::string::npos);
    CHECK(none.out.find("semidirect: saturated kernel lattice is all of Z^n") != std::string::npos);

    json j = json::parse(run("certificate --json " + f + " " + just_a).out);
    CHECK(j["certificate"]["kind"] == "height");
    json jn = json::parse(run("certificate --json " + f + " " + full).out);
    CHECK(jn["certificate"].is_null());
    CHECK(jn["log"].size() == 17);

    RunResult limited = run("certificate --primes 3 --max-level 1 " + f + " " + full);
    CHECK(limited.rc == 0);
    CHECK(limited.out.find("level p=3 l=1: image is the full group") != std::string::npos);

    CHECK(run("certificate --primes x " + f + " " + full).rc == 2);
    std::string empty = write_file("sub_empty.txt", "# nothing\n");
    CHECK(run("certificate " + f + " " + empty).rc == 1);
}

TEST_CASE("examples") {
    RunResult list = run("examples");
    CHECK(list.rc == 0);
    CHECK(list.out == "leary-minasyan\nbs(n,PHI)\n");

    RunResult lm = run("examples leary-minasyan");
    CHECK(lm.rc == 0);
    CHECK(lm.out.rfind("gbs rank=2", 0) == 0);
    CHECK(lm.out.find("alpha=[[2,1],[-1,2]]") != std::string::npos);

    RunResult bs = run("\"examples\" \"bs(2,[[3,0],[0,3]])\"");
    CHECK(bs.rc == 0);
    CHECK(bs.out.find("omega=[[3,0],[0,3]]") != std::string::npos);

    CHECK(run("examples nope").rc == 2);
}
