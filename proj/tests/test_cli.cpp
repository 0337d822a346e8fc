#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using mcsched::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("mcsched_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

// CSV lines without the trailing runtime column.
std::vector<std::string> csv_body(const std::string& text) {
    std::vector<std::string> out;
    for (auto line : lines(text)) {
        if (line.empty()) break;
        out.push_back(line.substr(0, line.rfind(',')));
    }
    return out;
}

}  // namespace

TEST_CASE("generate writes three files and is reproducible") {
    TempDir dir;
    const auto r = call({"generate", "--class", "u_c_hihi", "--size", "32x4", "--apps", "3",
                         "--seed", "5", "--out-dir", dir.path.string()});
    REQUIRE(r.code == 0);
    for (const char* ext : {".etc", ".dep", ".manifest"}) {
        CHECK(fs::exists(dir.path / (std::string("u_c_hihi_32x4_p3_s5") + ext)));
    }
    const auto etc = slurp(dir / "u_c_hihi_32x4_p3_s5.etc");
    const auto dep = slurp(dir / "u_c_hihi_32x4_p3_s5.dep");
    REQUIRE(call({"generate", "--class", "u_c_hihi", "--size", "32x4", "--apps", "3", "--seed",
                  "5", "--out-dir", dir.path.string()})
                .code == 0);
    CHECK(slurp(dir / "u_c_hihi_32x4_p3_s5.etc") == etc);
    CHECK(slurp(dir / "u_c_hihi_32x4_p3_s5.dep") == dep);

    const auto bad = call({"generate", "--class", "u_q_hihi", "--out-dir", dir.path.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("u_q_hihi") != std::string::npos);
    CHECK(call({"generate"}).code == 1);
    CHECK(call({"bogus"}).code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("generated files feed back into run and eval") {
    TempDir dir;
    REQUIRE(call({"generate", "--class", "u_s_lolo", "--size", "20x3", "--apps", "2", "--out-dir",
                  dir.path.string()})
                .code == 0);
    const auto stem = dir / "u_s_lolo_20x3_p2_s1";
    const auto r = call({"run", "--etc", stem + ".etc", "--dep", stem + ".dep", "--manifest",
                         stem + ".manifest", "--algo", "greedy", "--no-summary"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 2);

    std::string zeros;
    for (int i = 0; i < 20; ++i) zeros += "0 ";
    std::ofstream(dir / "zeros.txt") << zeros;
    CHECK(call({"eval", "--etc", stem + ".etc", "--dep", stem + ".dep", "--n", "20", "--q", "3",
                "--p", "2", "--schedule", dir / "zeros.txt"})
              .code == 0);
}

TEST_CASE("run: demo preset with a fixed all-zero schedule") {
    const auto r = call({"run", "--preset", "demo", "--algo", "fixed", "--no-summary"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() >= 2);
    CHECK(ls[0] == "class,dataset,apps,algo,seed,best_fitness_sum,best_makespan_max,generations,"
                   "evaluations,runtime_ms");
    CHECK(ls[1].rfind("demo,9x4,2,fixed,1,88,15,", 0) == 0);
}

TEST_CASE("run: every class and seed yields one GA row") {
    TempDir dir;
    const auto r = call({"run", "--classes", "all", "--sizes", "24x4", "--apps", "3", "--seeds",
                         "1,2,3", "--population", "10", "--generations", "5", "--csv",
                         dir / "out.csv"});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(dir / "out.csv"));
    REQUIRE(rows.size() == 37);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",ga,") != std::string::npos);
    for (const char* cls : {"u_c_hihi", "u_i_lolo", "u_s_lohi"}) {
        CHECK(r.out.find(cls) != std::string::npos);
    }
    CHECK(r.out.find("24*4(3 Appl.)") != std::string::npos);
}

TEST_CASE("run: random search rows honour the budget") {
    const auto r = call({"run", "--classes", "u_c_hihi", "--sizes", "16x4", "--apps", "2",
                         "--algo", "random", "--budget", "10000", "--no-summary"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[1].find(",random,") != std::string::npos);
    CHECK(ls[1].find(",10000,") != std::string::npos);
}

TEST_CASE("eval reports the demo objective and rejects bad schedules") {
    TempDir dir;
    std::ofstream(dir / "zeros.txt") << "0 0 0 0 0 0 0 0 0\n";
    std::ofstream(dir / "range.txt") << "0 0 4 0 0 0 0 0 0\n";
    std::ofstream(dir / "empty.txt") << "";

    const auto ok = call({"eval", "--demo", "--schedule", dir / "zeros.txt"});
    REQUIRE(ok.code == 0);
    CHECK(ok.out.find("makespan_sum 88") != std::string::npos);
    CHECK(ok.out.find("makespan_max 15") != std::string::npos);

    const auto range = call({"eval", "--demo", "--schedule", dir / "range.txt"});
    CHECK(range.code == 2);
    CHECK(range.err.find("position 2") != std::string::npos);

    CHECK(call({"eval", "--demo", "--schedule", dir / "empty.txt"}).code == 2);
    CHECK(call({"eval", "--demo", "--schedule", dir / "missing.txt"}).code == 2);
    CHECK(call({"eval", "--schedule", dir / "zeros.txt"}).code == 1);
}

TEST_CASE("eval rejects malformed instance files") {
    TempDir dir;
    std::ofstream(dir / "short.etc") << "1 2 3 4 5 6 7\n";
    std::ofstream(dir / "ok.dep") << "0 0\n0 0\n";
    std::ofstream(dir / "cyc.dep") << "0 1\n1 0\n";
    std::ofstream(dir / "ok.etc") << "1 2 3 4 5 6 7 8\n";
    std::ofstream(dir / "s.txt") << "0 0\n";
    const std::vector<std::string> dims{"--n", "2", "--q", "4", "--schedule", dir / "s.txt"};

    auto with = [&](std::string etc, std::string dep) {
        std::vector<std::string> args{"eval", "--etc", dir / etc, "--dep", dir / dep};
        args.insert(args.end(), dims.begin(), dims.end());
        return call(args);
    };
    CHECK(with("ok.etc", "ok.dep").code == 0);
    CHECK(with("short.etc", "ok.dep").code == 2);
    CHECK(with("ok.etc", "cyc.dep").code == 2);
}

TEST_CASE("config files set defaults that flags override") {
    TempDir dir;
    std::ofstream(dir / "run.cfg") << "# experiment\nclasses=u_i_hilo\nsizes=16x4\napps=2\n"
                                      "seeds=4,5\npopulation=8\ngenerations=3\n";
    const auto base = call({"run", "--config", dir / "run.cfg", "--no-summary"});
    REQUIRE(base.code == 0);
    const auto ls = lines(base.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[1].rfind("u_i_hilo,16x4,2,ga,4,", 0) == 0);
    CHECK(ls[2].rfind("u_i_hilo,16x4,2,ga,5,", 0) == 0);
    CHECK(ls[1].find(",3,26,") != std::string::npos);

    const auto over = call({"run", "--config", dir / "run.cfg", "--seeds", "9", "--no-summary"});
    REQUIRE(over.code == 0);
    REQUIRE(lines(over.out).size() == 2);
    CHECK(lines(over.out)[1].rfind("u_i_hilo,16x4,2,ga,9,", 0) == 0);

    std::ofstream(dir / "bad.cfg") << "classes\n";
    CHECK(call({"run", "--config", dir / "bad.cfg"}).code == 1);
    CHECK(call({"run", "--config", dir / "absent.cfg"}).code == 1);
}

TEST_CASE("CSV output is deterministic apart from runtimes") {
    const std::vector<std::string> base{"run", "--classes", "u_c_lohi,u_s_hilo", "--sizes", "20x4",
                                        "--apps", "2,4", "--seeds", "1,2", "--algo", "ga,random",
                                        "--population", "10", "--generations", "6", "--no-summary"};
    const auto a = call(base);
    REQUIRE(a.code == 0);
    const auto b = call(base);
    auto parallel = base;
    parallel.insert(parallel.end(), {"--parallel-runs", "4", "--threads", "3"});
    const auto c = call(parallel);
    REQUIRE(c.code == 0);
    CHECK(csv_body(a.out).size() == 17);
    CHECK(csv_body(a.out) == csv_body(b.out));
    CHECK(csv_body(a.out) == csv_body(c.out));
}

TEST_CASE("demo walkthrough prints the reference objective") {
    const auto r = call({"demo", "--generations", "20"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("makespan_sum 88") != std::string::npos);
    CHECK(call({"demo", "--variant", "14", "--generations", "5"}).code == 0);
    CHECK(call({"demo", "--variant", "10"}).code == 1);
}
