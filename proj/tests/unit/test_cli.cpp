#include <doctest.h>

#include "mofsp/front_io.hpp"
#include "mofsp/instance.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mofsp;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "mofsp_test_cli";

int cli(const std::string& args) {
    const std::string cmd = std::string(MOFSP_CLI_PATH) + " " + args + " > " + (kDir / "stdout.txt").string() +
                            " 2> " + (kDir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

struct Scratch {
    Scratch() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
    ~Scratch() { fs::remove_all(kDir); }
};

}  // namespace

TEST_CASE("gen writes a parseable instance") {
    Scratch s;
    const auto file = kDir / "i.txt";
    CHECK(cli("gen --jobs 7 --machines 3 --missing 0.2 --seed 4 --out " + file.string()) == 0);
    const auto inst = read_instance_file(file.string());
    CHECK(inst.name == "7Jx3M-20%");
    GeneratorConfig cfg;
    cfg.n_jobs = 7;
    cfg.n_machines = 3;
    cfg.missing_prob = 0.2;
    cfg.seed = 4;
    CHECK(inst == generate_instance(cfg));

    CHECK(cli("gen --jobs 7 --machines 3 --missing 1.0") == 1);
    CHECK(cli("gen --machines 3") == 1);
    CHECK(cli("frobnicate") == 1);
}

TEST_CASE("run executes a plan and reports partial failures") {
    Scratch s;
    const auto out = kDir / "res";
    write(kDir / "plan.json", R"({"instances":[{"generator":{"jobs":6,"machines":2,"missing":0.1,"seed":3}}],
        "algorithms":[{"algorithm":"NSGA2","max_evaluations":400},{"algorithm":"MOEA/D","max_evaluations":400}],
        "replications":2,"base_seed":9,"output_dir":")" + out.string() + R"("})");
    CHECK(cli("run --plan " + (kDir / "plan.json").string() + " --workers 2") == 0);
    CHECK(fs::exists(out / "runs.csv"));
    CHECK(fs::exists(out / "consolidated.csv"));
    CHECK(fs::exists(out / "manifest.json"));

    // the reference front scores itself perfectly
    const auto ref = (out / "reference" / "6Jx2M-10%.csv").string();
    CHECK(cli("metrics --front " + ref + " --ref " + ref) == 0);
    CHECK(slurp(kDir / "stdout.txt").rfind("rhv,spread\n1,", 0) == 0);
    CHECK(cli("metrics --front " + (kDir / "nope.csv").string() + " --ref " + ref) == 1);

    write(kDir / "bad.json", R"({"instances":[],"algorithms":[]})");
    CHECK(cli("run --plan " + (kDir / "bad.json").string()) == 1);
    CHECK(cli("run --plan " + (kDir / "absent.json").string()) == 1);

    // weights this large overflow the weighted completion time, so every run fails
    std::string text = "huge\n10000 1 0\n";
    for (int j = 0; j < 10000; ++j) text += "100\n";
    for (int j = 0; j < 10000; ++j) text += j == 0 ? "0" : " 0";
    text += "\n";
    for (int j = 0; j < 10000; ++j) text += j == 0 ? "2147483648" : " 2147483648";
    text += "\n";
    write(kDir / "huge.txt", text);
    write(kDir / "fail.json", R"({"instances":[{"file":")" + (kDir / "huge.txt").string() + R"("}],
        "algorithms":[{"algorithm":"NSGA2","population":4,"max_evaluations":4}],
        "replications":1,"output_dir":")" + (kDir / "fail").string() + R"("})");
    CHECK(cli("run --plan " + (kDir / "fail.json").string()) == 2);
    CHECK(slurp(kDir / "fail" / "runs.csv").find(",error,") != std::string::npos);
}

TEST_CASE("sweep") {
    Scratch s;
    const auto out = kDir / "sweep";
    CHECK(cli("sweep --base 6x3 --seed 1 --probs 0,0.1,0.1 --output " + out.string()) == 1);
    CHECK(cli("sweep --base 6by3 --probs 0 --output " + out.string()) == 1);
    CHECK(cli("sweep --base 6x3 --seed 1 --probs 0,0.2 --replications 1 --evaluations 200 --output " +
              out.string()) == 0);
    CHECK(fs::exists(out / "sweep.csv"));
    CHECK(fs::exists(out / "sweep.json"));
    CHECK(slurp(kDir / "stdout.txt").find("tardiness median non-increasing") != std::string::npos);
}
