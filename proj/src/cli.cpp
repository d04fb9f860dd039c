#include "rasaeco/cli.hpp"

#include <CLI11.hpp>

#include "rasaeco/pipeline.hpp"
#include "rasaeco/stats.hpp"

namespace rasaeco {

namespace {

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        auto item = text.substr(start, end - start);
        if (!item.empty()) out.push_back(std::move(item));
        start = end + 1;
    }
    return out;
}

void print_report(const Report& report, std::ostream& out) {
    for (const auto& line : format_text(report)) out << line << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compiler, linter and renderer for AECO scenario documents", "rasaeco"};
    app.require_subcommand(1);

    std::string scenarios_dir;
    std::string out_dir;
    std::string format = "text";
    std::string ifc_vocabulary;
    std::string natures;
    bool strict = false;

    auto add_shared = [&](CLI::App* sub) {
        sub->add_option("--scenarios-dir", scenarios_dir, "Directory holding <id>/scenario.md files")->required();
        sub->add_flag("--strict", strict, "Exit with 1 when there are warnings");
        sub->add_option("--ifc-vocabulary", ifc_vocabulary, "File with one IFC entity name per line");
        sub->add_option("--nature-vocabulary", natures, "Comma-separated canonical relation natures");
    };

    auto* render = app.add_subcommand("render", "Render the corpus to HTML and SVG");
    add_shared(render);
    render->add_option("--out", out_dir, "Output directory")->required();

    auto* check = app.add_subcommand("check", "Report diagnostics");
    add_shared(check);
    check->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* stats = app.add_subcommand("stats", "Print corpus statistics as JSON");
    add_shared(stats);
    stats->add_option("--format", format, "json")->check(CLI::IsMember({"json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "rasaeco: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        Config config;
        config.scenarios_dir = scenarios_dir;
        config.strict = strict;
        config.format = format;
        if (!out_dir.empty()) config.out_dir = out_dir;
        ConfigOverrides overrides;
        if (!ifc_vocabulary.empty()) overrides.ifc_vocabulary_path = ifc_vocabulary;
        if (!natures.empty()) overrides.nature_vocabulary = split_list(natures);
        config = load_config(std::move(config), overrides);

        const auto analysis = analyze(config);
        const auto& report = analysis.report;
        const int code = exit_code(report, config.strict);

        if (check->parsed()) {
            if (config.format == "json") {
                out << format_json(report) << '\n';
            } else {
                print_report(report, out);
            }
            return code;
        }
        if (stats->parsed()) {
            if (!report.diagnostics().empty()) print_report(report, err);
            out << emit_stats_json(corpus_stats(analysis.corpus, analysis.graph, analysis.vocabulary));
            return code;
        }
        print_report(report, out);
        if (report.has_errors()) return code;
        write_tree(*config.out_dir, render_outputs(analysis));
        return code;
    } catch (const FatalError& e) {
        err << "rasaeco: " << e.what() << '\n';
        return e.exit_code();
    }
}

}  // namespace rasaeco
