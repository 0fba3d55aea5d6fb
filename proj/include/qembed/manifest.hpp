#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qembed {

// Serialized next to every output artifact. Replaying a manifest at
// --threads 1 reproduces the run bit-exactly (wall-clock aside).
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> args; // fully resolved flags, replayable
    uint64_t seed = 0;
    int threads = 1;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    double wall_clock_seconds = 0.0;

    void save(const std::string& path) const {
        nlohmann::json j;
        j["subcommand"] = subcommand;
        j["args"] = args;
        j["seed"] = seed;
        j["threads"] = threads;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["wall_clock_seconds"] = wall_clock_seconds;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write manifest: " + path);
        out << j.dump(2) << '\n';
    }

    static RunManifest load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open manifest: " + path);
        nlohmann::json j;
        in >> j;
        RunManifest m;
        m.subcommand = j.at("subcommand").get<std::string>();
        m.args = j.at("args").get<std::vector<std::string>>();
        m.seed = j.at("seed").get<uint64_t>();
        m.threads = j.at("threads").get<int>();
        m.inputs = j.value("inputs", std::vector<std::string>{});
        m.outputs = j.value("outputs", std::vector<std::string>{});
        return m;
    }
};

} // namespace qembed
