#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rasaeco/cli.hpp"
#include "rasaeco/pipeline.hpp"

using namespace rasaeco;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rasaeco-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
    }
    return out;
}

fs::path copy_fixtures(const fs::path& into) {
    const auto dir = into / "scenarios";
    fs::copy(RASAECO_FIXTURES_DIR, dir, fs::copy_options::recursive);
    return dir;
}

const std::string kFixtures = RASAECO_FIXTURES_DIR;
const std::string kSeeded = std::string(RASAECO_TEST_DATA_DIR) + "/seeded";

}  // namespace

TEST_CASE("check on the fixture corpus") {
    const auto r = cli({"check", "--scenarios-dir", kFixtures});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 error(s), 1 warning(s)\n") != std::string::npos);
    CHECK(r.out.find("W101 warning: unknown IFC entity 'IfcPerfromanceHistory'") != std::string::npos);
    CHECK(cli({"check", "--scenarios-dir", kFixtures, "--strict"}).code == 1);
}

TEST_CASE("check json output") {
    const auto r = cli({"check", "--scenarios-dir", kFixtures, "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["errors"] == 0);
    CHECK(j["warnings"] == 1);
    CHECK(j["diagnostics"][0]["code"] == "W101");
}

TEST_CASE("check with an unresolved reference") {
    const auto r = cli({"check", "--scenarios-dir", kSeeded + "/E006/scenarios"});
    CHECK(r.code == 2);
    std::size_t lines = 0;
    for (auto pos = r.out.find(" E006 error: "); pos != std::string::npos; pos = r.out.find(" E006 error: ", pos + 1)) {
        ++lines;
    }
    CHECK(lines == 1);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"publish", "--scenarios-dir", kFixtures}).code == kExitUsage);
    CHECK(cli({"check", "--scenarios-dir", kFixtures, "--bogus"}).code == kExitUsage);
    CHECK(cli({"check"}).code == kExitUsage);
    CHECK(cli({"render", "--scenarios-dir", kFixtures}).code == kExitUsage);
    CHECK(cli({"check", "--scenarios-dir", kFixtures, "--format", "xml"}).code == kExitUsage);
    CHECK(cli({"stats", "--scenarios-dir", kFixtures, "--format", "text"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("missing scenarios directory") {
    const auto r = cli({"check", "--scenarios-dir", "/nonexistent/rasaeco/dir"});
    CHECK(r.code == kExitNoInput);
    CHECK(r.err.find("scenarios directory not found") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("config file") {
    TempDir tmp;
    const auto dir = copy_fixtures(tmp.path);

    std::ofstream(dir / kConfigFileName) << R"({"nature_vocabulary": ["uses"]})";
    auto r = cli({"check", "--scenarios-dir", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("0 error(s), 5 warning(s)") != std::string::npos);  // 4 refines edges + W101

    r = cli({"check", "--scenarios-dir", dir.string(), "--nature-vocabulary", "uses,refines"});
    CHECK(r.out.find("0 error(s), 1 warning(s)") != std::string::npos);

    std::ofstream(dir / "vocab.txt") << "IfcPerfromanceHistory\nIfcCostItem\nIfcRelAssignsToControl\nIfcTask\n"
                                        "IfcZone\nIfcActor\nIfcControl\nIfcPerformanceHistory\n";
    std::ofstream(dir / kConfigFileName) << R"({"ifc_vocabulary_path": "vocab.txt"})";
    r = cli({"check", "--scenarios-dir", dir.string()});
    CHECK(r.out.find("0 error(s), 0 warning(s)") != std::string::npos);

    std::ofstream(dir / kConfigFileName) << R"({"nature_vocabulary": "uses"})";
    CHECK(cli({"check", "--scenarios-dir", dir.string()}).code == kExitConfig);
    std::ofstream(dir / kConfigFileName) << "{not json";
    r = cli({"check", "--scenarios-dir", dir.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("malformed config") != std::string::npos);
}

TEST_CASE("render writes the full tree") {
    TempDir tmp;
    const auto out = tmp.path / "site";
    const auto r = cli({"render", "--scenarios-dir", kFixtures, "--out", out.string()});
    CHECK(r.code == 0);
    const auto files = tree(out);
    CHECK(files.size() == 16);
    CHECK(files.count("index.html") == 1);
    CHECK(files.count("ontology.svg") == 1);
    for (const char* id : {"cost_tracking", "crane_guidance", "logistics", "risk_management", "risk_planning",
                           "risk_tracking", "truck_guidance"}) {
        CHECK(files.count(std::string(id) + "/scenario.html") == 1);
        CHECK(files.count(std::string(id) + "/volumetric.svg") == 1);
    }
    // No staging directories are left behind.
    std::size_t entries = 0;
    for (const auto& e : fs::directory_iterator(tmp.path)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);

    // A second run over an existing tree rewrites identical bytes.
    CHECK(cli({"render", "--scenarios-dir", kFixtures, "--out", out.string()}).code == 0);
    CHECK(tree(out) == files);
}

TEST_CASE("render leaves the output untouched on errors") {
    TempDir tmp;
    const auto fresh = tmp.path / "fresh";
    auto r = cli({"render", "--scenarios-dir", kSeeded + "/E006/scenarios", "--out", fresh.string()});
    CHECK(r.code == 2);
    CHECK_FALSE(fs::exists(fresh));

    const auto existing = tmp.path / "existing";
    fs::create_directories(existing);
    std::ofstream(existing / "keep.txt") << "old";
    r = cli({"render", "--scenarios-dir", kSeeded + "/E001/scenarios", "--out", existing.string()});
    CHECK(r.code == 2);
    CHECK(tree(existing) == std::map<std::string, std::string>{{"keep.txt", "old"}});
}

TEST_CASE("check and render report the same diagnostics") {
    TempDir tmp;
    for (const auto& dir : {kFixtures, kSeeded + "/W103/scenarios", kSeeded + "/E005/scenarios"}) {
        const auto check = cli({"check", "--scenarios-dir", dir});
        const auto render = cli({"render", "--scenarios-dir", dir, "--out", (tmp.path / "o").string()});
        CHECK(check.out == render.out);
        CHECK(check.code == render.code);
    }
}

TEST_CASE("stats prints json and reports diagnostics on stderr") {
    const auto r = cli({"stats", "--scenarios-dir", kFixtures});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["scenarios"].size() == 7);
    CHECK(r.err.find("W101") != std::string::npos);
    CHECK(cli({"stats", "--scenarios-dir", kFixtures, "--format", "json"}).out == r.out);
}

TEST_CASE("worker count follows the environment") {
    ::setenv("RASAECO_NO_PARALLEL", "1", 1);
    CHECK(worker_count() == 1);
    ::unsetenv("RASAECO_NO_PARALLEL");
    CHECK(worker_count() >= 1);

    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
}
