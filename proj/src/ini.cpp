/*
 Copyright 2026 The doublehoop authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "dhoop/ini.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dhoop {

static std::string trim(const std::string& s) {
    size_t a = 0;
    size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

IniFile IniFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("IniFile: cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

IniFile IniFile::parse(const std::string& text) {
    IniFile ini;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw std::runtime_error("IniFile: malformed section header at line " +
                                         std::to_string(lineno));
            }
            section = trim(t.substr(1, t.size() - 2));
            ini.sections_[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("IniFile: expected key = value at line " +
                                     std::to_string(lineno));
        }
        ini.sections_[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return ini;
}

std::optional<std::string> IniFile::get(const std::string& section, const std::string& key) const {
    auto sit = sections_.find(section);
    if (sit != sections_.end()) {
        auto kit = sit->second.find(key);
        if (kit != sit->second.end()) return kit->second;
    }
    if (!section.empty()) {
        return get("", key);
    }
    return std::nullopt;
}

std::optional<double> IniFile::get_double(const std::string& section,
                                          const std::string& key) const {
    auto v = get(section, key);
    if (!v) return std::nullopt;
    size_t pos = 0;
    const double d = std::stod(*v, &pos);
    if (pos != v->size()) {
        throw std::runtime_error("IniFile: '" + key + "' is not a number: " + *v);
    }
    return d;
}

std::optional<long long> IniFile::get_int(const std::string& section,
                                          const std::string& key) const {
    auto v = get(section, key);
    if (!v) return std::nullopt;
    size_t pos = 0;
    const long long i = std::stoll(*v, &pos);
    if (pos != v->size()) {
        throw std::runtime_error("IniFile: '" + key + "' is not an integer: " + *v);
    }
    return i;
}

std::optional<bool> IniFile::get_bool(const std::string& section, const std::string& key) const {
    auto v = get(section, key);
    if (!v) return std::nullopt;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    throw std::runtime_error("IniFile: '" + key + "' is not a boolean: " + *v);
}

void IniFile::set(const std::string& section, const std::string& key, const std::string& value) {
    sections_[section][key] = value;
}

void IniFile::set_double(const std::string& section, const std::string& key, double value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    set(section, key, os.str());
}

bool IniFile::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

std::string IniFile::serialize() const {
    std::ostringstream os;
    for (const auto& [section, kv] : sections_) {
        if (!section.empty()) os << "[" << section << "]\n";
        for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
    }
    return os.str();
}

void IniFile::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("IniFile: cannot write '" + path + "'");
    }
    out << serialize();
}

}  // namespace dhoop
