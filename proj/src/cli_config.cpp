// SPDX-License-Identifier: Apache-2.0
//
// aircomp: precoder design and link-level simulation for over-the-air computation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "aircomp/cli.hpp"

#include "aircomp/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace aircomp {

namespace {

std::string trim(std::string_view text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return std::string(text.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string trimmed = trim(item);
        if (!trimmed.empty()) items.push_back(trimmed);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    const auto result = std::from_chars(value.data(), end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw validation_error("config: key '" + key + "' expects a number, got '" + value + "'");
    }
    return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* end = value.data() + value.size();
    const auto result = std::from_chars(value.data(), end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw validation_error("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    return out;
}

int parse_count(const std::string& key, const std::string& value) {
    const long long out = parse_integer(key, value);
    if (out < 1 || out > 1'000'000) {
        throw validation_error("config: key '" + key + "' out of range: " + value);
    }
    return static_cast<int>(out);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const char* end = value.data() + value.size();
    const auto result = std::from_chars(value.data(), end, out);
    if (result.ec != std::errc{} || result.ptr != end) {
        throw validation_error("config: key '" + key + "' expects an unsigned integer, got '" +
                               value + "'");
    }
    return out;
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

} // namespace

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;

    std::stringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string content = trim(line);
        if (content.empty()) continue;

        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw validation_error("config: line " + std::to_string(line_number) +
                                   " is not a key = value pair");
        }
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty()) {
            throw validation_error("config: line " + std::to_string(line_number) + " has an empty key");
        }
        if (!seen.insert(key).second) {
            throw validation_error("config: duplicate key '" + key + "'");
        }

        if (key == "n") config.system.measurements_per_node = parse_count(key, value);
        else if (key == "m") config.system.antennas_per_node = parse_count(key, value);
        else if (key == "r") config.system.receive_antennas = parse_count(key, value);
        else if (key == "K") config.system.node_count = parse_count(key, value);
        else if (key == "p0") config.system.total_power = parse_double(key, value);
        else if (key == "snr_db") config.system.snr_db = parse_double(key, value);
        else if (key == "rho_data") config.system.rho_data = parse_double(key, value);
        else if (key == "rho_noise") config.system.rho_noise = parse_double(key, value);
        else if (key == "methods") {
            config.methods.clear();
            for (const auto& name : split_list(value)) {
                config.methods.push_back(design_tag_from_string(name));
            }
            if (config.methods.empty()) {
                throw validation_error("config: key 'methods' must list at least one method");
            }
        } else if (key == "T") config.channel_draws = parse_count(key, value);
        else if (key == "Z") config.source_draws = parse_count(key, value);
        else if (key == "seed") config.seed = parse_seed(key, value);
        else if (key == "sweep.variable") config.sweep_variable = sweep_variable_from_string(value);
        else if (key == "sweep.values") {
            config.sweep_values.clear();
            for (const auto& item : split_list(value)) {
                config.sweep_values.push_back(parse_double(key, item));
            }
        } else if (key == "output_path") config.output_path = value;
        else throw validation_error("config: unknown key '" + key + "'");
    }

    config.system.validate();
    return config;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw io_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << stream.rdbuf();
    return parse_text(buffer.str());
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << "n = " << system.measurements_per_node << "\n";
    out << "m = " << system.antennas_per_node << "\n";
    out << "r = " << system.receive_antennas << "\n";
    out << "K = " << system.node_count << "\n";
    out << "p0 = " << format_double(system.total_power) << "\n";
    out << "snr_db = " << format_double(system.snr_db) << "\n";
    out << "rho_data = " << format_double(system.rho_data) << "\n";
    out << "rho_noise = " << format_double(system.rho_noise) << "\n";
    out << "methods = ";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (i > 0) out << ",";
        out << to_string(methods[i]);
    }
    out << "\n";
    out << "T = " << channel_draws << "\n";
    out << "Z = " << source_draws << "\n";
    out << "seed = " << seed << "\n";
    if (sweep_variable) {
        out << "sweep.variable = " << to_string(*sweep_variable) << "\n";
        out << "sweep.values = ";
        for (std::size_t i = 0; i < sweep_values.size(); ++i) {
            if (i > 0) out << ",";
            out << format_double(sweep_values[i]);
        }
        out << "\n";
    }
    if (!output_path.empty()) out << "output_path = " << output_path << "\n";
    return out.str();
}

TrialPlan RunConfig::plan() const {
    TrialPlan plan;
    plan.config = system;
    plan.methods = methods;
    plan.channel_draws = channel_draws;
    plan.source_draws = source_draws;
    plan.master_seed = seed;
    return plan;
}

} // namespace aircomp
