#include "nhqfi/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "nhqfi/common.hpp"

namespace nhqfi {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& key, const std::string& v)
{
    throw Error(ErrorKind::invalid_argument, "bad value for '" + key + "': '" + v + "'");
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (trim(v.substr(pos)).empty()) return d;
    } catch (const std::exception&) {
    }
    bad(key, v);
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text)
{
    KeyValues kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::invalid_argument, "config line " + std::to_string(lineno) + ": expected key = value");
        kv.values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues KeyValues::from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw Error(ErrorKind::invalid_argument, "JSON config must be an object");
    KeyValues kv;
    for (const auto& [k, v] : j.items()) {
        if (v.is_string()) kv.values_[k] = v.get<std::string>();
        else if (v.is_array()) {
            std::string joined;
            for (const auto& e : v) {
                if (!joined.empty()) joined += ",";
                joined += e.is_string() ? e.get<std::string>() : e.dump();
            }
            kv.values_[k] = joined;
        } else kv.values_[k] = v.dump();
    }
    return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& p)
{
    std::ifstream in(p);
    if (!in) throw Error(ErrorKind::io, "cannot read config '" + p.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return from_json(nlohmann::json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::invalid_argument, std::string("JSON config: ") + e.what());
        }
    }
    return parse(text);
}

std::string KeyValues::get_string(const std::string& key, const std::string& fallback) const
{
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const
{
    auto it = values_.find(key);
    return it == values_.end() ? fallback : to_double(key, it->second);
}

int KeyValues::get_int(const std::string& key, int fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double d = to_double(key, it->second);
    if (d != std::floor(d) || std::abs(d) > 1e9) bad(key, it->second);
    return static_cast<int>(d);
}

std::vector<double> KeyValues::get_list(const std::string& key, const std::vector<double>& fallback) const
{
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(it->second);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item.find(':') != std::string::npos) {
            std::istringstream r(item);
            std::string a, b, c;
            std::getline(r, a, ':');
            std::getline(r, b, ':');
            std::getline(r, c, ':');
            const double lo = to_double(key, a), hi = to_double(key, b), step = to_double(key, c);
            if (!(step > 0) || hi < lo) bad(key, item);
            const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
            for (long i = 0; i < count; ++i) out.push_back(lo + i * step);
        } else out.push_back(to_double(key, item));
    }
    if (out.empty()) bad(key, it->second);
    return out;
}

std::vector<int> KeyValues::get_int_list(const std::string& key, const std::vector<int>& fallback) const
{
    if (!has(key)) return fallback;
    std::vector<int> out;
    for (double d : get_list(key, {})) {
        if (d != std::floor(d)) bad(key, get_string(key, ""));
        out.push_back(static_cast<int>(d));
    }
    return out;
}

}  // namespace nhqfi
