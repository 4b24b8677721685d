#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace latbec {

// Floating-point formatting used by every artifact: 15 significant digits,
// so reruns of a deterministic command are byte-identical.
std::string fmt15(double x);

// Serializes with fmt15 for floating numbers (non-finite become null) and
// preserved key order.  Two-space indent, trailing newline.
std::string dump15(const nlohmann::ordered_json& j);

// CSV payload: header row then one row per entry, fields via fmt15.
std::string csv15(const std::vector<std::string>& header,
                  const std::vector<std::vector<double>>& rows);

// Loads a flat key-value JSON config: a single object whose values are
// scalars (or arrays of numbers, for coefficient lists).  Anything else
// throws InvalidParameter naming the offending key.
nlohmann::json load_flat_config(const std::string& path);

// Writes content to path, creating parent directories; throws
// InvalidParameter when the location is not writable.
void write_text_file(const std::string& path, const std::string& content);

// Merged option lookup (config file under command-line flags).  Values may
// be JSON numbers/booleans or strings still to be parsed; every accessor
// throws InvalidParameter naming the option when conversion fails.
class Settings {
  public:
    Settings() : kv_(nlohmann::json::object()) {}
    explicit Settings(nlohmann::json kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const;
    void set(const std::string& key, nlohmann::json value);
    void erase(const std::string& key);

    double num(const std::string& key) const;
    double num(const std::string& key, double dflt) const;
    long long integer(const std::string& key) const;
    long long integer(const std::string& key, long long dflt) const;
    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& dflt) const;
    std::vector<double> numlist(const std::string& key) const;

    const nlohmann::json& raw() const { return kv_; }

  private:
    nlohmann::json kv_;
};

} // namespace latbec
