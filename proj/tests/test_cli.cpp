#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "tsd/cli.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult r;
    r.code = tsd::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// writes a builtin design to a throwaway file and returns the path
std::string exported(const std::string& name) {
    std::string path = "cli_tmp_" + name + ".design";
    RunResult r = run({"builtin", "--name", name, "--out", path});
    REQUIRE(r.code == 0);
    return path;
}

} // namespace

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"sieve", "--t", "7", "--from", "2"}).code == 2); // missing --to
    CHECK(run({"sieve", "--t", "6", "--from", "2", "--to", "4"}).code == 2);
    CHECK(run({"sieve", "--t", "7", "--from", "5", "--to", "2"}).code == 2);
    CHECK(run({"verify-design", "--in", "no_such_file.design"}).code == 2);
    CHECK(run({"builtin", "--name", "nosuch", "--out", "x.design"}).code == 2);

    RunResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify-table") != std::string::npos);
}

TEST_CASE("builtin export and design verification") {
    std::string e8 = exported("e8");

    RunResult pass = run({"verify-design", "--in", e8, "--t", "7"});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("PASS") != std::string::npos);

    RunResult t4 = run({"verify-design", "--in", e8, "--t", "4"});
    CHECK(t4.code == 2);

    std::string e7 = exported("e7dual");
    CHECK(run({"verify-design", "--in", e7, "--t", "5"}).code == 0);
    // a 5-design is not certified at strength 7: verified failure, not usage
    CHECK(run({"verify-design", "--in", e7, "--t", "7"}).code == 1);

    // tight with irrational d: strength and cardinality pass; the integer
    // spectrum conventions stay informational
    std::string ico = exported("icosahedron");
    RunResult golden = run({"verify-design", "--in", ico, "--t", "5"});
    CHECK(golden.code == 0);
    CHECK(golden.out.find("result: PASS") != std::string::npos);
    std::remove(ico.c_str());

    std::remove(e8.c_str());
    std::remove(e7.c_str());
}

TEST_CASE("design verification json round trips") {
    std::string e7 = exported("e7dual");
    RunResult r = run({"--json", "verify-design", "--in", e7, "--t", "5"});
    CHECK(r.code == 0);

    json body = json::parse(r.out);
    CHECK(body["pass"] == true);
    CHECK(body["n"] == 7);
    CHECK(body["size"] == 56);
    CHECK(body["strength"]["pass"] == true);
    CHECK(body["tight"]["ok"] == true);
    CHECK(body["spectrum"]["tight5_compatible"] == true);

    // canonical form: parse and re-render byte-identically
    CHECK(body.dump(2) + "\n" == r.out);

    std::remove(e7.c_str());
}

TEST_CASE("lattice reports") {
    std::string e8 = exported("e8");
    RunResult r8 = run({"--json", "lattice-report", "--in", e8});
    CHECK(r8.code == 0);
    json j8 = json::parse(r8.out);
    CHECK(j8["even"] == true);
    CHECK(j8["det"] == "1");
    CHECK(j8["milgram"]["pass"] == true);
    CHECK(j8["milgram"]["expected"] == 0);
    std::remove(e8.c_str());

    std::string e7 = exported("e7dual");
    RunResult r7 = run({"--json", "lattice-report", "--in", e7});
    CHECK(r7.code == 0);
    json j7 = json::parse(r7.out);
    CHECK(j7["even"] == false);
    CHECK(j7["det"] == "64");
    CHECK(j7["disc_group"] == "Z/2 x Z/2 x Z/2 x Z/2 x Z/2 x Z/2");
    CHECK(j7["even_sublattice"]["index_two"] == true);
    CHECK(j7["even_sublattice"]["gamma_det"] == "2");
    CHECK(j7["even_sublattice"]["gamma_disc_group"] == "Z/2");
    CHECK(j7["even_sublattice"]["gamma_gauss_sum"]["eighth_root"] == 7);
    CHECK(j7["even_sublattice"]["ok"] == true);
    CHECK(j7["pass"] == true);
    CHECK(j7.dump(2) + "\n" == r7.out);

    // discriminant enumeration bound is honored: the halved even sublattice
    // still has a group of order 2 to enumerate
    CHECK(run({"--disc-bound", "1", "lattice-report", "--in", e7}).code == 2);
    std::remove(e7.c_str());

    std::string ico = exported("icosahedron");
    RunResult r3 = run({"lattice-report", "--in", ico});
    CHECK(r3.code == 3); // irrational coordinates span no rational lattice
    std::remove(ico.c_str());
}

TEST_CASE("sieve command") {
    RunResult text = run({"sieve", "--t", "7", "--from", "2", "--to", "21"});
    CHECK(text.code == 0);
    CHECK(text.out.find("Excluded") != std::string::npos);
    CHECK(text.out.find("KnownExists") != std::string::npos);
    CHECK(text.out.find("T-v2deq3") != std::string::npos);

    RunResult r = run({"--json", "sieve", "--t", "7", "--from", "2", "--to", "21"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["count"] == 20);
    CHECK(j["summary"]["excluded"] ==
          json({4, 5, 7, 8, 9, 11, 12, 13, 16, 19, 20, 21}));
    CHECK(j["summary"]["known_exists"] == json({2, 3}));
    CHECK(j["summary"]["open"] == json({6, 10, 14, 15, 17, 18}));
    CHECK(j["verdicts"].size() == 20);
    CHECK(j.dump(2) + "\n" == r.out);

    // deterministic under --jobs
    RunResult parallel =
        run({"--json", "--jobs", "8", "sieve", "--t", "7", "--from", "2", "--to", "21"});
    CHECK(parallel.code == 0);
    CHECK(parallel.out == r.out);

    // a tiny factor bound is an error, never a different table: 35 = 5 * 7
    // has no prime factor reachable at bound 1
    CHECK(run({"--factor-bound", "1", "sieve", "--t", "7", "--from", "34",
               "--to", "34"})
              .code == 2);
}

TEST_CASE("sieve honors a registry file") {
    const std::string path = "cli_tmp_registry.txt";
    {
        std::ofstream out(path);
        out << "t=7 param=6 source=TEST\n";
    }
    RunResult r = run({"--json", "--registry", path, "sieve", "--t", "7",
                       "--from", "6", "--to", "6"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdicts"][0]["status"] == "Excluded");
    CHECK(j["verdicts"][0]["reasons"][0]["code"] == "REGISTRY:TEST");
    std::remove(path.c_str());

    CHECK(run({"--registry", "no_such.txt", "sieve", "--t", "7", "--from", "2",
               "--to", "3"})
              .code == 2);
}

TEST_CASE("table verification command") {
    RunResult r = run({"verify-table"});
    CHECK(r.code == 0);
    CHECK(r.out.find("c0") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);

    RunResult j = run({"--json", "verify-table"});
    CHECK(j.code == 0);
    json body = json::parse(j.out);
    CHECK(body["pass"] == true);
    CHECK(body["cells"].size() == 24);
    CHECK(body["conclusions"].size() == 2);
    CHECK(body.dump(2) + "\n" == j.out);

    // hidden negative control: corrupted coefficients must fail loudly
    RunResult bad = run({"verify-table", "--perturb-cell", "3,0"});
    CHECK(bad.code == 1);

    CHECK(run({"verify-table", "--perturb-cell", "bogus"}).code == 2);
}
