#include "rasaeco/diagnostics.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "json.hpp"

namespace rasaeco {

namespace {

constexpr std::array<std::pair<Code, std::string_view>, 14> kCodeNames{{
    {Code::E001, "E001"}, {Code::E002, "E002"}, {Code::E003, "E003"},
    {Code::E004, "E004"}, {Code::E005, "E005"}, {Code::E006, "E006"},
    {Code::E007, "E007"}, {Code::E008, "E008"}, {Code::E009, "E009"},
    {Code::E010, "E010"}, {Code::W101, "W101"}, {Code::W102, "W102"},
    {Code::W103, "W103"}, {Code::W104, "W104"},
}};

}  // namespace

std::string_view code_name(Code code) {
    for (const auto& [c, name] : kCodeNames) {
        if (c == code) return name;
    }
    return "E000";
}

std::optional<Code> parse_code(std::string_view name) {
    for (const auto& [c, n] : kCodeNames) {
        if (n == name) return c;
    }
    return std::nullopt;
}

Severity severity_of(Code code) {
    return code_name(code).front() == 'E' ? Severity::error : Severity::warning;
}

std::string_view severity_name(Severity severity) {
    return severity == Severity::error ? "error" : "warning";
}

Diagnostic make_diagnostic(Code code, std::string message, const SourcePos& pos) {
    return Diagnostic{code, std::move(message), pos.path, pos.line, pos.col};
}

bool diagnostic_less(const Diagnostic& a, const Diagnostic& b) {
    return std::forward_as_tuple(a.path, a.line, a.col, code_name(a.code), a.message) <
           std::forward_as_tuple(b.path, b.line, b.col, code_name(b.code), b.message);
}

Report::Report(std::vector<Diagnostic> diagnostics) : diagnostics_(std::move(diagnostics)) {
    sort();
}

void Report::add(Diagnostic diagnostic) {
    diagnostics_.push_back(std::move(diagnostic));
    sort();
}

void Report::add_all(const std::vector<Diagnostic>& diagnostics) {
    diagnostics_.insert(diagnostics_.end(), diagnostics.begin(), diagnostics.end());
    sort();
}

void Report::sort() {
    std::stable_sort(diagnostics_.begin(), diagnostics_.end(), diagnostic_less);
}

std::size_t Report::errors() const {
    return static_cast<std::size_t>(std::count_if(
        diagnostics_.begin(), diagnostics_.end(),
        [](const Diagnostic& d) { return d.severity() == Severity::error; }));
}

std::size_t Report::warnings() const { return diagnostics_.size() - errors(); }

std::vector<std::string> format_text(const Report& report) {
    std::vector<std::string> lines;
    lines.reserve(report.diagnostics().size() + 1);
    for (const auto& d : report.diagnostics()) {
        std::string line = d.path;
        line += ':' + std::to_string(d.line) + ':' + std::to_string(d.col) + ": ";
        line += code_name(d.code);
        line += ' ';
        line += severity_name(d.severity());
        line += ": ";
        line += d.message;
        lines.push_back(std::move(line));
    }
    lines.push_back(std::to_string(report.errors()) + " error(s), " +
                    std::to_string(report.warnings()) + " warning(s)");
    return lines;
}

std::string format_json(const Report& report) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& d : report.diagnostics()) {
        nlohmann::ordered_json item;
        item["code"] = std::string(code_name(d.code));
        item["severity"] = std::string(severity_name(d.severity()));
        item["message"] = d.message;
        item["path"] = d.path;
        item["line"] = d.line;
        item["col"] = d.col;
        items.push_back(std::move(item));
    }
    nlohmann::ordered_json root;
    root["diagnostics"] = std::move(items);
    root["errors"] = report.errors();
    root["warnings"] = report.warnings();
    return root.dump();
}

namespace {

Report parse_report(const nlohmann::json& root) {
    if (!root.is_object() || !root.contains("diagnostics") || !root["diagnostics"].is_array()) {
        throw std::invalid_argument("report JSON lacks a diagnostics array");
    }
    std::vector<Diagnostic> diagnostics;
    for (const auto& item : root["diagnostics"]) {
        auto code = parse_code(item.at("code").get<std::string>());
        if (!code) throw std::invalid_argument("unknown diagnostic code");
        diagnostics.push_back(Diagnostic{*code, item.at("message").get<std::string>(),
                                         item.at("path").get<std::string>(),
                                         item.at("line").get<int>(), item.at("col").get<int>()});
    }
    return Report(std::move(diagnostics));
}

}  // namespace

Report parse_report_json(std::string_view text) {
    try {
        return parse_report(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(e.what());
    }
}

int exit_code(const Report& report, bool strict) {
    if (report.has_errors()) return 2;
    if (strict && report.warnings() > 0) return 1;
    return 0;
}

}  // namespace rasaeco
