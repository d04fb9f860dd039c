#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rasaeco/diagnostics.hpp"
#include "rasaeco/document.hpp"
#include "rasaeco/ontology.hpp"

namespace rasaeco {

// Process exit codes besides the ones of exit_code().
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNoInput = 66;
inline constexpr int kExitIo = 74;
inline constexpr int kExitConfig = 78;

/// A condition that aborts a command with a fixed exit code.
class FatalError : public std::runtime_error {
public:
    FatalError(int exit_code, const std::string& message)
        : std::runtime_error(message), exit_code_(exit_code) {}

    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

inline constexpr const char* kConfigFileName = "rasaeco.config.json";

struct Config {
    std::filesystem::path scenarios_dir;
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::filesystem::path> ifc_vocabulary_path;
    std::vector<std::string> nature_vocabulary = default_nature_vocabulary();
    bool strict = false;
    std::string format = "text";
};

/// Values given on the command line; unset ones fall back to the config file
/// and then to the defaults.
struct ConfigOverrides {
    std::optional<std::filesystem::path> ifc_vocabulary_path;
    std::optional<std::vector<std::string>> nature_vocabulary;
};

/// Merges `rasaeco.config.json` from config.scenarios_dir (if present) into
/// `config`, then applies `overrides`. A vocabulary path from the file is
/// relative to the scenarios directory. Throws FatalError: kExitNoInput when
/// the scenarios directory is missing, kExitConfig for a malformed file.
Config load_config(Config config, const ConfigOverrides& overrides);

/// Number of workers for per-file stages; 1 when RASAECO_NO_PARALLEL=1.
unsigned worker_count();

/// Calls fn(i) for every i in [0, n) on up to worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

struct Analysis {
    Corpus corpus;
    OntologyGraph graph;
    Vocabulary vocabulary;
    Report report;
};

/// Discovery, per-file parsing and building, local and cross resolution, IFC
/// lint and graph construction. Throws FatalError (kExitIo) on read failures.
Analysis analyze(const Config& config);

/// Every output file of `render`, keyed by path relative to the output dir.
std::map<std::filesystem::path, std::string> render_outputs(const Analysis& analysis);

/// Writes `files` below a staging directory next to `out_dir` and moves them
/// into place once all writes succeeded. Throws FatalError (kExitIo).
void write_tree(const std::filesystem::path& out_dir, const std::map<std::filesystem::path, std::string>& files);

std::string read_file(const std::filesystem::path& path);

}  // namespace rasaeco
