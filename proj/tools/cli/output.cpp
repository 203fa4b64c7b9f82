#include "cli/output.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fftw3.h>

#include "helmlab/errors.hpp"
#include "helmlab/hlzf.hpp"
#include "toml.hpp"

namespace helmlab::cli {

namespace fs = std::filesystem;

OutputDir::OutputDir(std::string root) : root_(std::move(root)) {
    if (root_.empty()) throw ConfigError("out", "no output directory given (--out or out = ...)");
    std::error_code ec;
    fs::create_directories(root_, ec);
    if (ec || !fs::is_directory(root_)) throw IoError("cannot create output directory '" + root_ + "'");
}

std::string OutputDir::file(const std::string& name) {
    if (name.empty() || name.find('/') != std::string::npos || name.find("..") != std::string::npos)
        throw IoError("refusing output name '" + name + "'");
    files_.push_back(name);
    return (fs::path(root_) / name).string();
}

void OutputDir::write_text(const std::string& name, const std::string& content) {
    const std::string path = file(name);
    std::ofstream os(path, std::ios::binary);
    os << content;
    os.close();
    if (!os) throw IoError("cannot write '" + path + "'");
}

void OutputDir::write_json(const std::string& name, const Json& j) { write_text(name, j.dump(2) + "\n"); }

void OutputDir::write_field(const std::string& name, const SampledField& f) { write_hlzf(file(name), f); }

namespace {

toml::array to_toml_array(const Json& j);

toml::table to_toml_table(const Json& j) {
    toml::table t;
    for (const auto& [k, v] : j.items()) {
        if (v.is_object()) t.insert(k, to_toml_table(v));
        else if (v.is_array()) t.insert(k, to_toml_array(v));
        else if (v.is_boolean()) t.insert(k, v.get<bool>());
        else if (v.is_number_integer()) t.insert(k, v.get<std::int64_t>());
        else if (v.is_number()) t.insert(k, v.get<double>());
        else if (v.is_string()) t.insert(k, v.get<std::string>());
        else t.insert(k, "null");
    }
    return t;
}

toml::array to_toml_array(const Json& j) {
    toml::array a;
    for (const auto& v : j) {
        if (v.is_object()) a.push_back(to_toml_table(v));
        else if (v.is_array()) a.push_back(to_toml_array(v));
        else if (v.is_boolean()) a.push_back(v.get<bool>());
        else if (v.is_number_integer()) a.push_back(v.get<std::int64_t>());
        else if (v.is_number()) a.push_back(v.get<double>());
        else if (v.is_string()) a.push_back(v.get<std::string>());
        else a.push_back("null");
    }
    return a;
}

}  // namespace

void write_manifest(OutputDir& out, const RunConfig& cfg, double wall_seconds, const Json& diagnostics) {
    toml::table m;
    toml::table run;
    run.insert("command", command_name(cfg.command));
    run.insert("seed", std::int64_t(cfg.seed));
    run.insert("threads", std::int64_t(cfg.threads));
    run.insert("wall_time_s", wall_seconds);
    if (cfg.config_path) run.insert("config_path", *cfg.config_path);
    m.insert("run", run);
    toml::table versions;
    versions.insert("helmlab", helmlab_version);
    versions.insert("fftw", std::string(fftw_version));
    versions.insert("tomlplusplus", std::to_string(TOML_LIB_MAJOR) + "." + std::to_string(TOML_LIB_MINOR) + "." +
                                        std::to_string(TOML_LIB_PATCH));
    versions.insert("nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH));
    versions.insert("compiler", std::string(__VERSION__));
    m.insert("versions", versions);
    if (!cfg.echo.empty()) m.insert("config", toml::parse(cfg.echo));
    m.insert("diagnostics", to_toml_table(diagnostics));
    toml::array files;
    for (const auto& f : out.files()) files.push_back(f);
    m.insert("outputs", files);
    std::ostringstream os;
    os << m << "\n";
    out.write_text("manifest.toml", os.str());
}

}  // namespace helmlab::cli
