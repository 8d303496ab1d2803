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

#ifndef DHOOP_INI_HPP
#define DHOOP_INI_HPP

#include <map>
#include <optional>
#include <string>

namespace dhoop {

/**
 * @brief Minimal reader/writer for "key = value" files with [section] headers.
 *
 * Lines starting with '#' or ';' are comments. Keys outside any section land
 * in the "" section; lookups fall back to the "" section when a sectioned key
 * is absent, so flat files remain valid.
 */
class IniFile {
public:
    static IniFile load(const std::string& path);
    static IniFile parse(const std::string& text);

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    std::optional<double> get_double(const std::string& section, const std::string& key) const;
    std::optional<long long> get_int(const std::string& section, const std::string& key) const;
    std::optional<bool> get_bool(const std::string& section, const std::string& key) const;

    void set(const std::string& section, const std::string& key, const std::string& value);
    void set_double(const std::string& section, const std::string& key, double value);

    bool has_section(const std::string& section) const;
    std::string serialize() const;
    void save(const std::string& path) const;

private:
    // section -> key -> value, insertion order not preserved (keys sorted).
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace dhoop

#endif  // DHOOP_INI_HPP
