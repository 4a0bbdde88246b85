#pragma once

// Configuration loader for the flat key=value text format and its flat JSON
// alternative (detected by the opening brace). Values from a config file
// fill in options the command line left untouched: flags override config,
// config overrides defaults.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskaverse/errors.hpp"

namespace riskaverse_cli {

using ConfigItems = std::vector<std::pair<std::string, std::vector<std::string>>>;

inline std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

inline ConfigItems load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw riskaverse::ParameterError("config: cannot read " + path);
    ConfigItems items;
    if (in.peek() == '{') {
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& err) {
            throw riskaverse::ParameterError("config: bad JSON in " + path + ": " + err.what());
        }
        if (!doc.is_object()) {
            throw riskaverse::ParameterError("config: JSON document must be a flat object");
        }
        for (const auto& [key, value] : doc.items()) {
            std::vector<std::string> cells;
            if (value.is_array()) {
                for (const auto& element : value) {
                    cells.push_back(element.is_string() ? element.get<std::string>()
                                                        : element.dump());
                }
            } else {
                cells.push_back(value.is_string() ? value.get<std::string>() : value.dump());
            }
            items.emplace_back(key, std::move(cells));
        }
        return items;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw riskaverse::ParameterError("config: expected key=value at " + path + ":" +
                                             std::to_string(line_no));
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw riskaverse::ParameterError("config: empty key at " + path + ":" +
                                             std::to_string(line_no));
        }
        items.emplace_back(key, std::vector<std::string>{value});
    }
    return items;
}

/// Apply config entries to options of `leaf` (falling back to its parents)
/// that the command line did not set.
inline void apply_config(CLI::App* leaf, const std::string& path) {
    for (const auto& [key, values] : load_config(path)) {
        const std::string name = (key.size() == 1 ? "-" : "--") + key;
        CLI::Option* option = nullptr;
        for (CLI::App* scope = leaf; scope != nullptr && option == nullptr;
             scope = scope->get_parent()) {
            option = scope->get_option_no_throw(name);
        }
        if (option == nullptr) {
            throw riskaverse::ParameterError("config: unknown key '" + key + "'");
        }
        if (option->count() > 0) continue;  // explicit flags win
        for (const auto& value : values) option->add_result(value);
        option->run_callback();
    }
}

} // namespace riskaverse_cli
