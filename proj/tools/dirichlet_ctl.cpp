#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "commands.hpp"
#include "dirichlet/errors.hpp"
#include "dirichlet/io.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kIo = 1;
constexpr int kValidation = 2;
constexpr int kDomain = 3;

std::string configValue(const nlohmann::ordered_json& v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string joined;
        for (const auto& item : v) {
            joined += (joined.empty() ? "" : ",") + configValue(item);
        }
        return joined;
    }
    return v.dump();
}

// Appends the entries of a --config document as flags. They come last, so
// with the take-last policy the document overrides the command line.
std::vector<std::string> withConfig(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].starts_with("--config=")) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(dirichlet::io::readFile(path));
    } catch (const nlohmann::json::exception& e) {
        throw dirichlet::ValidationError("malformed config '" + path + "': " + e.what());
    }
    if (!doc.is_object()) {
        throw dirichlet::ValidationError("config must be a JSON object");
    }
    if (doc.contains("command")) {
        std::vector<std::string> words;
        std::string command = configValue(doc["command"]);
        for (std::size_t pos = 0; pos < command.size();) {
            const auto space = command.find_first_of(" ,", pos);
            if (space != pos) {
                words.push_back(command.substr(pos, space - pos));
            }
            pos = space == std::string::npos ? command.size() : space + 1;
        }
        const bool given = args.size() > 1 && (args[1] == "series" || args[1] == "control");
        if (!given) {
            args.insert(args.begin() + 1, words.begin(), words.end());
        }
    }
    for (const auto& [key, value] : doc.items()) {
        if (key == "command") {
            continue;
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back("--" + key);
            }
            continue;
        }
        args.push_back("--" + key);
        args.push_back(configValue(value));
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified exponential series and heat-equation control tools", "dirichlet-ctl"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.fallthrough();
    app.require_subcommand(1);

    ctl::GlobalOptions global;
    app.add_option("--out", global.out, "Write the result to this file instead of stdout");
    app.add_flag("--no-header", global.noHeader, "Omit the provenance comment line");
    app.add_option("--config", global.config, "JSON document of option values (overrides flags)");

    ctl::addSeriesCommands(app, global);
    ctl::addControlCommands(app, global);

    try {
        const auto args = withConfig(std::vector<std::string>(argv, argv + argc));
        std::vector<const char*> raw;
        for (const auto& a : args) {
            raw.push_back(a.c_str());
        }
        app.parse(static_cast<int>(raw.size()), raw.data());
        return kOk;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "dirichlet-ctl: error: " << e.what() << "\n";
        return kValidation;
    } catch (const dirichlet::ValidationError& e) {
        std::cerr << "dirichlet-ctl: error: " << e.what() << "\n";
        return kValidation;
    } catch (const dirichlet::DomainError& e) {
        std::cerr << "dirichlet-ctl: error: " << e.what() << "\n";
        return kDomain;
    } catch (const dirichlet::IoError& e) {
        std::cerr << "dirichlet-ctl: error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "dirichlet-ctl: internal error: " << e.what() << "\n";
        return kIo;
    }
}
