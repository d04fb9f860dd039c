#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rasaeco {

enum class Code {
    E001,  // missing meta header
    E002,  // malformed meta header
    E003,  // unknown axis value
    E004,  // inverted cuboid range
    E005,  // duplicate symbol
    E006,  // unresolved symbol reference
    E007,  // unresolved scenario
    E008,  // dangling relation
    E009,  // malformed or misnested tag
    E010,  // duplicate or invalid identifier
    W101,  // unknown IFC token
    W102,  // non-canonical relation nature
    W103,  // overlapping cuboids
    W104,  // empty volumetric
};

enum class Severity { error, warning };

std::string_view code_name(Code code);
std::optional<Code> parse_code(std::string_view name);

// E* codes are errors, W* codes are warnings.
Severity severity_of(Code code);
std::string_view severity_name(Severity severity);

/// A position inside a scenario file. Line and column are 1-based; (0, 0)
/// marks corpus-level findings that have no position.
struct SourcePos {
    std::string path;
    int line = 0;
    int col = 0;
};

struct Diagnostic {
    Code code = Code::E001;
    std::string message;
    std::string path;
    int line = 0;
    int col = 0;

    Severity severity() const { return severity_of(code); }

    bool operator==(const Diagnostic&) const = default;
};

Diagnostic make_diagnostic(Code code, std::string message, const SourcePos& pos);

/// Total order used for reports: (path, line, col, code name, message).
bool diagnostic_less(const Diagnostic& a, const Diagnostic& b);

/// A sorted collection of diagnostics with per-severity counts.
class Report {
public:
    Report() = default;
    explicit Report(std::vector<Diagnostic> diagnostics);

    void add(Diagnostic diagnostic);
    void add_all(const std::vector<Diagnostic>& diagnostics);

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
    std::size_t errors() const;
    std::size_t warnings() const;
    bool has_errors() const { return errors() > 0; }

    bool operator==(const Report&) const = default;

private:
    void sort();

    std::vector<Diagnostic> diagnostics_;
};

/// `path:line:col: CODE severity: message` per diagnostic plus the summary line.
std::vector<std::string> format_text(const Report& report);

std::string format_json(const Report& report);

/// Inverse of format_json. Throws std::invalid_argument on malformed input.
Report parse_report_json(std::string_view text);

// 0 clean, 1 warnings in strict mode, 2 any error.
int exit_code(const Report& report, bool strict);

}  // namespace rasaeco
