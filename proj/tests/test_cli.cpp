#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

// Drives the installed binary end to end through files, matching how batch
// users call it. RHT_CLI_PATH and RHT_DATA_DIR come from the build.

namespace {

using Json = nlohmann::ordered_json;

std::string dataFile(const std::string& name) { return std::string(RHT_DATA_DIR) + "/" + name; }

std::string scratchDir() {
    static std::string dir = [] {
        std::string d = "/tmp/rht_cli_test_" + std::to_string(::getpid());
        std::system(("mkdir -p " + d).c_str());
        return d;
    }();
    return dir;
}

std::string scratchFile(const std::string& name) { return scratchDir() + "/" + name; }

int runCli(const std::string& args) {
    std::string cmd = std::string(RHT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Json loadReport(const std::string& path) { return Json::parse(slurp(path)); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("cohomology of the disk pair") {
    std::string out = scratchFile("coh_disk.json");
    int rc = runCli("cohomology --input " + dataFile("pair_disk.json") +
                    " --degree 2 --output " + out);
    CHECK(rc == 0);
    Json j = loadReport(out);
    CHECK(j["degree"] == 2);
    CHECK(j["group"]["freeRank"] == 1);
    CHECK(j["group"]["torsionFactors"].empty());
}

TEST_CASE("cohomology sees projective-plane torsion") {
    std::string out = scratchFile("coh_rp2.json");
    int rc = runCli("cohomology --input " + dataFile("pair_rp2.json") +
                    " --degree 2 --output " + out);
    CHECK(rc == 0);
    Json j = loadReport(out);
    CHECK(j["group"]["freeRank"] == 0);
    REQUIRE(j["group"]["torsionFactors"].size() == 1);
    CHECK(j["group"]["torsionFactors"][0] == "2");
}

TEST_CASE("cohomology with trivial coefficients") {
    std::string out = scratchFile("coh_triv.json");
    int rc = runCli("cohomology --input " + dataFile("pair_disk.json") +
                    " --degree 2 --coefficients "
                    "{\\\"freeRank\\\":0,\\\"torsionFactors\\\":[]} --output " +
                    out);
    CHECK(rc == 0);
    Json j = loadReport(out);
    CHECK(j["group"]["freeRank"] == 0);
    CHECK(j["group"]["torsionFactors"].empty());
}

TEST_CASE("cohomological dimension command") {
    std::string out = scratchFile("cd.json");
    CHECK(runCli("cd --input " + dataFile("pair_disk.json") + " --output " + out) == 0);
    CHECK(loadReport(out)["cohomologicalDimension"] == 2);
    CHECK(runCli("cd --input " + dataFile("pair_rp2.json") + " --output " + out) == 0);
    CHECK(loadReport(out)["cohomologicalDimension"] == 2);
    CHECK(runCli("cd --input " + dataFile("pair_point.json") + " --output " + out) == 0);
    CHECK(loadReport(out)["cohomologicalDimension"] == 0);
}

TEST_CASE("hspace verdicts and exit codes") {
    std::string out = scratchFile("hspace.json");
    CHECK(runCli("hspace-check --input " + dataFile("model_s3.json") +
                 " --degree 10 --output " + out) == 0);
    Json ok = loadReport(out);
    CHECK(ok["rationalHspace"] == true);
    CHECK(ok["firstNontrivialDegree"].is_null());

    CHECK(runCli("hspace-check --input " + dataFile("model_s2.json") +
                 " --degree 3 --output " + out) == 1);
    Json fail = loadReport(out);
    CHECK(fail["rationalHspace"] == false);
    CHECK(fail["firstNontrivialDegree"] == 3);

    CHECK(runCli("hspace-check --input " + dataFile("model_s2.json") +
                 " --degree 2 --output " + out) == 0);

    CHECK(runCli("hspace-check --input " + dataFile("model_bad.json") + " --degree 3") == 2);
}

TEST_CASE("form extraction to a file") {
    std::string out = scratchFile("forms.json");
    CHECK(runCli("extract-forms --input " + dataFile("model_s2.json") + " --output " + out) == 0);
    Json j = loadReport(out);
    CHECK(j["targetDegree"] == 3);
    CHECK(j["forms"][0][0][0] == "1");
    CHECK(j["alphaBasis"][0] == "a");

    // A zero differential is a computed negative, not an input error.
    CHECK(runCli("extract-forms --input " + dataFile("model_flat.json") + " --output " +
                 scratchFile("forms_flat.json")) == 1);
}

TEST_CASE("reduce then solve the block system") {
    std::string red = scratchFile("reduction.json");
    CHECK(runCli("reduce --input " + dataFile("qdiff_xy1.json") + " --forms " +
                 dataFile("forms_unit.json") + " --output " + red) == 0);
    Json j = loadReport(red);
    CHECK(j["distinguishedEntry"] == "1");
    CHECK(j["system"]["shape"] == "QBLIN");

    std::string out = scratchFile("solve_red.json");
    CHECK(runCli("solve --input " + red + " --bound 2 --output " + out) == 0);
    Json sol = loadReport(out);
    CHECK(sol["solvable"] == true);
    CHECK(sol["solution"].contains("u1[1]"));
}

TEST_CASE("solve exit codes cover the verdict range") {
    std::string out = scratchFile("solve.json");
    CHECK(runCli("solve --input " + dataFile("qdiff_xy1.json") + " --bound 3 --output " + out) ==
          0);
    Json j = loadReport(out);
    CHECK(j["solvable"] == true);
    CHECK(j["solution"]["x1"] == "-1");
    CHECK(j["solution"]["y1"] == "-1");

    CHECK(runCli("solve --input " + dataFile("qdiff_parity.json") + " --bound 3") == 1);
    CHECK(runCli("solve --input " + dataFile("qdiff_two.json") + " --bound 50") == 3);
    CHECK(runCli("solve --input " + dataFile("malformed.json") + " --bound 3") == 2);
    CHECK(runCli("solve --input " + dataFile("no_such_file.json") + " --bound 3") == 2);
}

TEST_CASE("encode and verify a reduction") {
    std::string red = scratchFile("reduction2.json");
    std::string forms = scratchFile("s2_extraction.json");
    CHECK(runCli("extract-forms --input " + dataFile("model_s2.json") + " --output " + forms) ==
          0);
    CHECK(runCli("reduce --input " + dataFile("qdiff_xy1.json") + " --forms " + forms +
                 " --output " + red) == 0);

    std::string enc = scratchFile("encoded.json");
    CHECK(runCli("encode --input " + red + " --forms " + forms + " --output " + enc) == 0);
    Json j = loadReport(enc);
    CHECK(j["d"] == 3);
    CHECK(j["pair"]["cells"].size() > 0);
    CHECK(j["tensorCount"] == 2);

    std::string ver = scratchFile("verified.json");
    CHECK(runCli("verify --input " + enc + " --degree 3 --output " + ver) == 0);
    Json rep = loadReport(ver);
    CHECK(rep["totalAllZero"] == true);
    CHECK(rep["pairCohomologicalDimension"] == 4);
}

TEST_CASE("verify reports a computed negative for a dangling top cell") {
    std::string pairFile = scratchFile("dangling.json");
    std::ofstream(pairFile) << R"({"cells": [
        {"id": "pt", "dimension": 0, "role": "in-A", "attaching": "0"},
        {"id": "c", "dimension": 4, "role": "fat-wedge", "attaching": "0"}],
        "assumptions": []})";
    CHECK(runCli("verify --input " + pairFile + " --degree 3") == 1);
}

TEST_CASE("harness output is byte-identical across runs") {
    std::string out1 = scratchFile("harness1.json");
    std::string out2 = scratchFile("harness2.json");
    std::string args = "harness --seed 7 --count 5 --forms " + dataFile("forms_unit.json") +
                       " --bound 2 ";
    CHECK(runCli(args + "--output " + out1) == 0);
    CHECK(runCli(args + "--output " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    Json j = loadReport(out1);
    CHECK(j["seed"] == 7);
    CHECK(j["summary"]["instances"] == 5);
    CHECK(j["summary"]["consistent"] == 5);
    CHECK(j["instances"].size() == 5);
}

TEST_CASE("pipeline runs end to end and reproduces itself") {
    std::string out1 = scratchFile("pipe1.json");
    std::string out2 = scratchFile("pipe2.json");
    std::string args = "pipeline --model " + dataFile("model_s2.json") + " --input " +
                       dataFile("qdiff_xy1.json") + " --bound 2 ";
    CHECK(runCli(args + "--output " + out1) == 0);
    CHECK(runCli(args + "--output " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2));
    Json j = loadReport(out1);
    CHECK(j["verdict"] == "consistent");
    CHECK(j["homology"]["totalAllZero"] == true);
    CHECK(j["instance"]["qdiffSolvable"] == true);
}

TEST_CASE("pipeline refuses a zero differential at the extract stage") {
    std::string out = scratchFile("pipe_flat.json");
    int rc = runCli("pipeline --model " + dataFile("model_flat.json") + " --input " +
                    dataFile("qdiff_xy1.json") + " --output " + out);
    CHECK(rc == 1);
    Json j = loadReport(out);
    CHECK(j["stage"] == "extract");
    CHECK(j["error"] == "rational H-space; no forms to extract");
}

TEST_CASE("argument errors exit with code two") {
    CHECK(runCli("no-such-subcommand") == 2);
    CHECK(runCli("cohomology") == 2);           // missing required flags
    CHECK(runCli("cohomology --input " + dataFile("pair_disk.json") + " --degree -1") == 2);
    CHECK(runCli("--help") == 0);
}

}  // TEST_SUITE
