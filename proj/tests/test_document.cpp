#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "rasaeco/document.hpp"

using namespace rasaeco;

namespace {

const char* kHeader =
    "<rasaeco-meta>\n{\"title\": \"T\", \"volumetric\": [{\"aspect_from\": \"cost\", \"aspect_to\": \"cost\", "
    "\"phase_from\": \"planning\", \"phase_to\": \"planning\", \"level_from\": \"site\", \"level_to\": \"site\"}]}\n"
    "</rasaeco-meta>\n";

std::string read(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ScenarioDocument load(const std::string& body, std::vector<Diagnostic>* diags = nullptr) {
    auto r = load_document("doc", "doc.md", std::string(kHeader) + body);
    if (diags != nullptr) *diags = r.diagnostics;
    REQUIRE(r.ok());
    return std::move(*r.value);
}

ScenarioDocument fixture(const std::string& id) {
    const auto path = std::filesystem::path(RASAECO_FIXTURES_DIR) / id / "scenario.md";
    auto r = load_document(id, path.generic_string(), read(path));
    REQUIRE(r.ok());
    return std::move(*r.value);
}

std::vector<Code> codes(const std::vector<Diagnostic>& diags) {
    std::vector<Code> out;
    for (const auto& d : diags) out.push_back(d.code);
    return out;
}

std::vector<std::string> tokens_of(const Definition& d) {
    std::vector<std::string> out;
    for (const auto& m : d.ifc_tokens) out.push_back(m.token);
    return out;
}

}  // namespace

TEST_CASE("duplicate definitions are E005, namespaces are separate") {
    std::vector<Diagnostic> diags;
    load("<def name=\"cost\">IfcCostItem</def>\n<def name=\"cost\">IfcCostItem</def>\n", &diags);
    CHECK(codes(diags) == std::vector<Code>{Code::E005});
    load("<def name=\"cost\">a</def>\n<model name=\"cost\">b</model>\n", &diags);
    CHECK(diags.empty());
}

TEST_CASE("truck guidance markings in document order") {
    const auto doc = fixture("truck_guidance");
    REQUIRE(doc.markings.size() == 3);
    CHECK(doc.markings[0].dimension == Axis::phase);
    CHECK(doc.markings[0].value == ordinal(Phase::construction));
    CHECK(doc.markings[0].anchor_id == "m-phase-1-1");
    CHECK(doc.markings[1].dimension == Axis::level);
    CHECK(doc.markings[1].value == ordinal(Level::machine_crew));
    CHECK(doc.markings[1].anchor_id == "m-level-1-1");
    CHECK(doc.markings[2].anchor_id == "m-level-1-2");
    CHECK(doc.markings[0].text == "The deliveries are specified as tasks.");
}

TEST_CASE("cost tracking definitions and their IFC tokens") {
    const auto doc = fixture("cost_tracking");
    REQUIRE(doc.definitions.size() == 3);
    CHECK(tokens_of(doc.definitions.at("cost")) == std::vector<std::string>{"IfcCostItem"});
    CHECK(tokens_of(doc.definitions.at("expenditure")) ==
          std::vector<std::string>{"IfcCostItem", "IfcRelAssignsToControl"});
    CHECK(tokens_of(doc.definitions.at("performance_history")) ==
          std::vector<std::string>{"IfcPerfromanceHistory"});
    CHECK(doc.models.count("bim_extended") == 1);
}

TEST_CASE("local resolution") {
    CHECK(resolve_local(load("<def name=\"cost\">c</def> <ref name=\"cost\"/>")).empty());
    const auto missing_model = resolve_local(load("<modelref name=\"bim_extended\"/>"));
    CHECK(codes(missing_model) == std::vector<Code>{Code::E006});
    CHECK(resolve_local(load("<ref name=\"risk_management#risk\"/>")).empty());
    CHECK(resolve_local(load("<scenarioref name=\"nowhere\"/>")).empty());
}

TEST_CASE("references split qualified names") {
    const auto local = make_reference(TagKind::ref, "cost", {});
    CHECK(local.is_local());
    CHECK(local.target_name == "cost");
    const auto qualified = make_reference(TagKind::ref, "risk_management#risk", {});
    CHECK_FALSE(qualified.is_local());
    CHECK(qualified.target_scenario == "risk_management");
    CHECK(qualified.target_name == "risk");
    const auto scenario = make_reference(TagKind::scenarioref, "logistics", {});
    CHECK(scenario.target_scenario == "logistics");
    CHECK(scenario.target_name.empty());
}

TEST_CASE("IFC lint") {
    const auto zone = load("<def name=\"z\">An IfcZone.</def>");
    CHECK(lint_ifc(zone, default_ifc_vocabulary()).empty());
    const auto typo = load("<def name=\"h\">An IfcPerfromanceHistory.</def>");
    const auto w = lint_ifc(typo, default_ifc_vocabulary());
    REQUIRE(w.size() == 1);
    CHECK(w[0].code == Code::W101);
    CHECK(w[0].line == 4);
    CHECK(w[0].col == 18);
    const auto task = load("<def name=\"t\">An IfcTask.</def>");
    CHECK(codes(lint_ifc(task, Vocabulary{})) == std::vector<Code>{Code::W101});
    // Tokens outside definitions are not linted.
    CHECK(lint_ifc(load("IfcNothing here."), default_ifc_vocabulary()).empty());
}

TEST_CASE("default vocabulary and vocabulary files") {
    for (const char* name : {"IfcZone", "IfcTask", "IfcActor", "IfcCostItem", "IfcRelAssignsToControl",
                             "IfcPerformanceHistory"}) {
        CHECK(default_ifc_vocabulary().count(name) == 1);
    }
    const auto v = parse_vocabulary("# comment\nIfcWall\n\n  IfcDoor  \r\n");
    CHECK(v == Vocabulary{"IfcWall", "IfcDoor"});
}

TEST_CASE("IFC token boundaries") {
    const auto found = find_ifc_tokens("IfcA xIfcB _IfcC (IfcD) `IfcE` Ifc");
    std::vector<std::string> names;
    for (const auto& [pos, name] : found) names.push_back(name);
    CHECK(names == std::vector<std::string>{"IfcA", "IfcD", "IfcE"});
}

TEST_CASE("strip_tags") {
    CHECK(strip_tags(R"(a <phase name="planning">b</phase> c)") == "a b c");
    CHECK(strip_tags(R"(x <ref name="cost"/> y)") == "x  y");
    CHECK(strip_tags(R"(<phase name="planning">a <level name="site">b</level> c</phase>)") == "a b c");
    CHECK(strip_tags("<b>kept</b>") == "<b>kept</b>");
    // A tag assembled from the remains of another is removed as well.
    CHECK(strip_tags(R"(<ref <ref name="x"/>name="y"/>)") == "");
}

TEST_CASE("strip_tags is idempotent") {
    const std::vector<std::string> pieces{"<phase name=\"planning\">", "</phase>", "<ref name=\"d\"/>", "<ref ",
                                          "name=\"y\"/>", "</", "level>", "<", ">", "text", " ", "\n"};
    std::mt19937 rng(9);
    for (int round = 0; round < 500; ++round) {
        std::string s;
        for (int i = 0, n = static_cast<int>(rng() % 30); i < n; ++i) s += pieces[rng() % pieces.size()];
        const auto once = strip_tags(s);
        CHECK(strip_tags(once) == once);
    }
}

TEST_CASE("word counts") {
    CHECK(count_words("") == 0);
    CHECK(count_words("# Summary\nTwo words.") == 3);
    CHECK(count_words("- one\n* two\n1. three\n#hashtag") == 4);
    CHECK(count_words("```\ncode here\n```") == 2);
    CHECK(count_words("a\tb\r\nc\fd\ve") == 5);
    CHECK(count_words("-\n#\n1.") == 0);
    CHECK(word_count(load("")) == 0);
    CHECK(word_count(load("# Summary\n\n<phase name=\"planning\">Two</phase> words.\n")) == 3);
}

TEST_CASE("symbol lookup is stable") {
    const auto doc = fixture("cost_tracking");
    const auto& a = doc.definitions.at("cost").span;
    const auto& b = doc.definitions.at("cost").span;
    CHECK(a == b);
    CHECK(doc.definitions.at("cost").span.start_line < doc.definitions.at("expenditure").span.start_line);
}

TEST_CASE("unknown marking values are E003") {
    std::vector<Diagnostic> diags;
    const auto doc = load("<level name=\"helicopter\">x</level>", &diags);
    CHECK(codes(diags) == std::vector<Code>{Code::E003});
    CHECK(doc.markings.empty());
}

TEST_CASE("identifiers") {
    CHECK(is_valid_identifier("truck_guidance"));
    CHECK(is_valid_identifier("a1"));
    CHECK_FALSE(is_valid_identifier(""));
    CHECK_FALSE(is_valid_identifier("Truck"));
    CHECK_FALSE(is_valid_identifier("a-b"));
}
