#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace qroots_cli {

/// Canonical number format: 12 significant digits, -0 folded into 0,
/// non-finite values rendered as null.
inline std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    if (v == 0.0) v = 0.0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// Serializer with insertion-ordered keys and the canonical float format, so
/// identical runs produce byte-identical output.
inline void dump_canonical(const nlohmann::ordered_json& j, std::string& out) {
    using nlohmann::ordered_json;
    switch (j.type()) {
        case ordered_json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                dump_canonical(it.value(), out);
            }
            out += '}';
            break;
        }
        case ordered_json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ',';
                first = false;
                dump_canonical(item, out);
            }
            out += ']';
            break;
        }
        case ordered_json::value_t::string:
            out += nlohmann::json(j.get<std::string>()).dump();
            break;
        case ordered_json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case ordered_json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            break;
        case ordered_json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            break;
        case ordered_json::value_t::number_float:
            out += format_double(j.get<double>());
            break;
        default:
            out += "null";
    }
}

inline std::string dump_canonical(const nlohmann::ordered_json& j) {
    std::string out;
    dump_canonical(j, out);
    out += '\n';
    return out;
}

/// Text rendering of the same document; values use the identical formats.
inline void dump_text(const nlohmann::ordered_json& j, std::string& out, const std::string& prefix) {
    using nlohmann::ordered_json;
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const auto& v = it.value();
            if (v.is_object() || v.is_array()) {
                out += prefix + it.key() + ":\n";
                dump_text(v, out, prefix + "  ");
            } else {
                out += prefix + it.key() + ": ";
                dump_text(v, out, "");
            }
        }
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& item : j) {
            if (item.is_object() || item.is_array()) {
                out += prefix + "- [" + std::to_string(i) + "]\n";
                dump_text(item, out, prefix + "  ");
            } else {
                out += prefix + "- ";
                dump_text(item, out, "");
            }
            ++i;
        }
    } else if (j.is_string()) {
        out += j.get<std::string>() + "\n";
    } else if (j.is_boolean()) {
        out += std::string(j.get<bool>() ? "true" : "false") + "\n";
    } else if (j.is_number_integer()) {
        out += std::to_string(j.get<long long>()) + "\n";
    } else if (j.is_number_float()) {
        out += format_double(j.get<double>()) + "\n";
    } else {
        out += "null\n";
    }
}

inline std::string dump_text(const nlohmann::ordered_json& j) {
    std::string out;
    dump_text(j, out, "");
    return out;
}

}  // namespace qroots_cli
