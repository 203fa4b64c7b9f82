#pragma once
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "helmlab/grid.hpp"
#include "json.hpp"

namespace helmlab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* helmlab_version = "0.1.0";

// Every artifact goes through here; names may not leave the directory.
class OutputDir {
public:
    explicit OutputDir(std::string root);
    const std::string& root() const { return root_; }
    void write_text(const std::string& name, const std::string& content);
    void write_json(const std::string& name, const Json& j);
    void write_field(const std::string& name, const SampledField& f);
    const std::vector<std::string>& files() const { return files_; }

private:
    std::string file(const std::string& name);
    std::string root_;
    std::vector<std::string> files_;
};

// manifest.toml: config echo, versions, wall time, diagnostics, file list.
void write_manifest(OutputDir& out, const RunConfig& cfg, double wall_seconds, const Json& diagnostics);

}  // namespace helmlab::cli
