#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nhqfi {

// Flat string map behind both config syntaxes (key = value lines, or a flat
// JSON object). Typed getters throw Error(invalid_argument) on bad values.
class KeyValues {
public:
    static KeyValues parse(std::string_view text);
    static KeyValues from_json(const nlohmann::json& j);
    static KeyValues load(const std::filesystem::path& p);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    // Comma separated list; "a:b:step" expands to an inclusive range.
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace nhqfi
