#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qbist/io.hpp"
#include "qbist/types.hpp"

namespace qbist {

/// Ordered key/value report. Text form is one "key = value" line per entry,
/// floating-point values printed with 17 significant digits; structured form
/// is JSON with dotted keys expanded into nested objects and numbers emitted
/// at full round-trip precision. Both forms are deterministic: identical
/// inputs give byte-identical output.
class Report {
  public:
    using Value = std::variant<double, long long, bool, std::string,
                               std::vector<double>, std::vector<long long>>;

    void put(const std::string& key, double v) { entries_.emplace_back(key, Value(v)); }
    void put(const std::string& key, int v) { entries_.emplace_back(key, Value(static_cast<long long>(v))); }
    void put(const std::string& key, long long v) { entries_.emplace_back(key, Value(v)); }
    void put(const std::string& key, bool v) { entries_.emplace_back(key, Value(v)); }
    void put(const std::string& key, const std::string& v) { entries_.emplace_back(key, Value(v)); }
    void put(const std::string& key, const char* v) { entries_.emplace_back(key, Value(std::string(v))); }
    void put(const std::string& key, std::vector<double> v) { entries_.emplace_back(key, Value(std::move(v))); }
    void put(const std::string& key, std::vector<long long> v) { entries_.emplace_back(key, Value(std::move(v))); }
    void put(const std::string& key, const RealVector& v) {
        put(key, std::vector<double>(v.data(), v.data() + v.size()));
    }
    void put(const std::string& key, const std::vector<int>& v) {
        put(key, std::vector<long long>(v.begin(), v.end()));
    }
    void put_value(const std::string& key, Value v) { entries_.emplace_back(key, std::move(v)); }

    const std::vector<std::pair<std::string, Value>>& entries() const { return entries_; }

    bool empty() const { return entries_.empty(); }

    std::string to_text() const {
        std::string out;
        for (const auto& [key, value] : entries_) {
            out += key;
            out += " = ";
            out += text_value(value);
            out += "\n";
        }
        return out;
    }

    /// JSON document; dots in keys create nesting ("sphere.radius2" ->
    /// {"sphere": {"radius2": ...}}).
    std::string to_json() const {
        nlohmann::ordered_json root = nlohmann::ordered_json::object();
        for (const auto& [key, value] : entries_) {
            nlohmann::ordered_json* node = &root;
            std::size_t start = 0;
            while (true) {
                const std::size_t dot = key.find('.', start);
                if (dot == std::string::npos) break;
                node = &(*node)[key.substr(start, dot - start)];
                if (!node->is_object()) *node = nlohmann::ordered_json::object();
                start = dot + 1;
            }
            (*node)[key.substr(start)] = json_value(value);
        }
        return root.dump(2) + "\n";
    }

  private:
    static std::string text_value(const Value& value) {
        return std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    return io::format_double(v);
                } else if constexpr (std::is_same_v<T, long long>) {
                    return std::to_string(v);
                } else if constexpr (std::is_same_v<T, bool>) {
                    return v ? "true" : "false";
                } else if constexpr (std::is_same_v<T, std::string>) {
                    return v;
                } else if constexpr (std::is_same_v<T, std::vector<double>>) {
                    std::string s;
                    for (const double x : v) {
                        if (!s.empty()) s += " ";
                        s += io::format_double(x);
                    }
                    return s;
                } else {
                    std::string s;
                    for (const long long x : v) {
                        if (!s.empty()) s += " ";
                        s += std::to_string(x);
                    }
                    return s;
                }
            },
            value);
    }

    static nlohmann::ordered_json json_value(const Value& value) {
        return std::visit(
            [](const auto& v) -> nlohmann::ordered_json { return nlohmann::ordered_json(v); },
            value);
    }

    std::vector<std::pair<std::string, Value>> entries_;
};

}  // namespace qbist
