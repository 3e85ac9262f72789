#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bogodense/error.hpp"
#include "bogodense/parallel.hpp"
#include "cli.hpp"

namespace {

// Decided before parsing so that parse errors honour --format json too.
bool wants_json(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--format" && i + 1 < args.size()) return args[i + 1] == "json";
        if (args[i] == "--format=json") return true;
    }
    return false;
}

int report(bool json, std::string_view category, const std::string& message) {
    if (json) {
        nlohmann::ordered_json j;
        j["error"]["category"] = std::string(category);
        j["error"]["message"] = message;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cerr << "bogodense: " << category << ": " << message << '\n';
    }
    return bogodense::cli::exit_code_for(category);
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    const bool json = wants_json(args);
    try {
        bogodense::parallel::configure_from_env();
        const auto cfg = bogodense::cli::parse_config(args);
        bogodense::cli::run(cfg, std::cout);
        std::cout.flush();
        return std::cout ? 0 : bogodense::cli::exit_code_for("io");
    } catch (const bogodense::Error& e) {
        return report(json, e.category(), e.what());
    } catch (const std::exception& e) {
        return report(json, "internal", e.what());
    }
}
