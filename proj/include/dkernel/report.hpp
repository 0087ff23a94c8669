#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dk {

// Ordered key/value output of a CLI command.  Keys appear in the order they were set,
// so two runs of the same command on the same input render byte-identical reports;
// the only intentionally nondeterministic field is elapsed_ms, which tests strip.
class Report {
public:
    void set(const std::string& key, std::string value) {
        for (auto& kv : fields_)
            if (kv.first == key) {
                kv.second = std::move(value);
                return;
            }
        fields_.emplace_back(key, std::move(value));
    }

    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, long value) { set(key, std::to_string(value)); }

    void set_verdict(bool v) {
        verdict_ = v;
        set("verdict", v);
    }

    std::optional<bool> verdict() const { return verdict_; }

    // 0 when the command's verdict is true (or the command has no verdict), 1 otherwise.
    int exit_code() const { return (!verdict_ || *verdict_) ? 0 : 1; }

    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

    std::string plain() const {
        std::string out;
        for (const auto& kv : fields_) out += kv.first + ": " + kv.second + "\n";
        return out;
    }

    std::string pretty() const {
        std::size_t width = 0;
        for (const auto& kv : fields_) width = std::max(width, kv.first.size());
        std::string out;
        for (const auto& kv : fields_)
            out += "  " + kv.first + std::string(width - kv.first.size(), ' ') + "  " +
                   kv.second + "\n";
        return out;
    }

    std::string json() const {
        nlohmann::ordered_json j;
        for (const auto& kv : fields_) {
            if (kv.second == "true") j[kv.first] = true;
            else if (kv.second == "false") j[kv.first] = false;
            else if (is_integer(kv.second)) j[kv.first] = std::stoll(kv.second);
            else j[kv.first] = kv.second;
        }
        return j.dump(2) + "\n";
    }

private:
    // small enough for std::stoll; larger digit strings stay strings
    static bool is_integer(const std::string& s) {
        std::size_t i = s.size() && s[0] == '-' ? 1 : 0;
        if (i == s.size() || s.size() - i > 15) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    }

    std::vector<std::pair<std::string, std::string>> fields_;
    std::optional<bool> verdict_;
};

} // namespace dk
