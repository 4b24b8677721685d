#include "latticebec/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latticebec/errors.hpp"

namespace latbec {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt15(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

namespace {

void dump_rec(const ordered_json& j, std::string& out, int depth) {
    const std::string pad(2 * std::size_t(depth), ' ');
    const std::string pad1(2 * std::size_t(depth + 1), ' ');
    switch (j.type()) {
    case ordered_json::value_t::object: {
        if (j.empty()) { out += "{}"; return; }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad1 + json(it.key()).dump() + ": ";
            dump_rec(it.value(), out, depth + 1);
        }
        out += "\n" + pad + "}";
        return;
    }
    case ordered_json::value_t::array: {
        if (j.empty()) { out += "[]"; return; }
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad1;
            dump_rec(v, out, depth + 1);
        }
        out += "\n" + pad + "]";
        return;
    }
    case ordered_json::value_t::string:
        out += json(j.get<std::string>()).dump();
        return;
    case ordered_json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        return;
    case ordered_json::value_t::number_integer:
        out += std::to_string(j.get<long long>());
        return;
    case ordered_json::value_t::number_unsigned:
        out += std::to_string(j.get<unsigned long long>());
        return;
    case ordered_json::value_t::number_float: {
        double x = j.get<double>();
        out += std::isfinite(x) ? fmt15(x) : "null";
        return;
    }
    default:
        out += "null";
        return;
    }
}

} // namespace

std::string dump15(const ordered_json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

std::string csv15(const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw InvalidParameter("csv row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            out += fmt15(row[i]);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json load_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidParameter("config file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw InvalidParameter("config file " + path +
                               " must hold a single JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_array()) {
            for (const auto& e : v)
                if (!e.is_number() && !e.is_string())
                    throw InvalidParameter(
                        "config key " + it.key() +
                        ": arrays may hold numbers or strings only");
        } else if (!v.is_primitive() || v.is_null()) {
            throw InvalidParameter("config key " + it.key() +
                                   " must be a scalar");
        }
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InvalidParameter("cannot write " + path);
    out << content;
    if (!out) throw InvalidParameter("cannot write " + path);
}

bool Settings::has(const std::string& key) const { return kv_.contains(key); }

void Settings::set(const std::string& key, nlohmann::json value) {
    kv_[key] = std::move(value);
}

void Settings::erase(const std::string& key) {
    if (kv_.contains(key)) kv_.erase(key);
}

namespace {

[[noreturn]] void bad_option(const std::string& key, const std::string& why) {
    throw InvalidParameter("option --" + key + ": " + why);
}

double to_num(const std::string& key, const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        char* end = nullptr;
        double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            bad_option(key, "cannot parse '" + s + "' as a number");
        return x;
    }
    bad_option(key, "expected a number");
}

} // namespace

double Settings::num(const std::string& key) const {
    if (!has(key)) throw InvalidParameter("missing required option --" + key);
    return to_num(key, kv_.at(key));
}

double Settings::num(const std::string& key, double dflt) const {
    return has(key) ? to_num(key, kv_.at(key)) : dflt;
}

long long Settings::integer(const std::string& key) const {
    if (!has(key)) throw InvalidParameter("missing required option --" + key);
    double x = to_num(key, kv_.at(key));
    long long n = static_cast<long long>(std::llround(x));
    if (double(n) != x) bad_option(key, "expected an integer");
    return n;
}

long long Settings::integer(const std::string& key, long long dflt) const {
    return has(key) ? integer(key) : dflt;
}

std::string Settings::str(const std::string& key) const {
    if (!has(key)) throw InvalidParameter("missing required option --" + key);
    const json& v = kv_.at(key);
    if (!v.is_string()) bad_option(key, "expected a string");
    return v.get<std::string>();
}

std::string Settings::str(const std::string& key,
                          const std::string& dflt) const {
    return has(key) ? str(key) : dflt;
}

std::vector<double> Settings::numlist(const std::string& key) const {
    if (!has(key)) throw InvalidParameter("missing required option --" + key);
    const json& v = kv_.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(to_num(key, e));
        return out;
    }
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_string()) bad_option(key, "expected numbers");
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) bad_option(key, "empty entry in list");
        char* end = nullptr;
        double x = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0')
            bad_option(key, "cannot parse '" + item + "' as a number");
        out.push_back(x);
    }
    if (out.empty()) bad_option(key, "empty list");
    return out;
}

} // namespace latbec
