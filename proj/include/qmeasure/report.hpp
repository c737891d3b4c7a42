// Copyright 2026 The qmeasure developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file report.hpp
 * Deterministic report rendering. Key order follows insertion order,
 * floats print with up to 17 significant digits (%.17g), so identical
 * inputs produce byte-identical reports.
 */
#ifndef QMEASURE_REPORT_HPP
#define QMEASURE_REPORT_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/linalg.hpp"

namespace qmeasure {

using OrderedJson = nlohmann::ordered_json;

namespace report {

inline std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline void dump_json_to(const OrderedJson &j, std::string &out) {
    switch (j.type()) {
    case OrderedJson::value_t::object: {
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) {
                out += ',';
            }
            first = false;
            out += nlohmann::json(it.key()).dump();
            out += ':';
            dump_json_to(it.value(), out);
        }
        out += '}';
        break;
    }
    case OrderedJson::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto &item : j) {
            if (!first) {
                out += ',';
            }
            first = false;
            dump_json_to(item, out);
        }
        out += ']';
        break;
    }
    case OrderedJson::value_t::string:
        out += nlohmann::json(j.get<std::string>()).dump();
        break;
    case OrderedJson::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case OrderedJson::value_t::number_integer:
        out += std::to_string(j.get<long long>());
        break;
    case OrderedJson::value_t::number_unsigned:
        out += std::to_string(j.get<unsigned long long>());
        break;
    case OrderedJson::value_t::number_float:
        out += format_double(j.get<double>());
        break;
    case OrderedJson::value_t::null:
        out += "null";
        break;
    default:
        throw DomainError("unserializable report value");
    }
}

/// Compact single-line JSON with %.17g floats.
inline std::string dump_json(const OrderedJson &j) {
    std::string out;
    dump_json_to(j, out);
    out += '\n';
    return out;
}

inline void dump_text_to(const OrderedJson &j, std::string &out,
                         const std::string &prefix) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() ||
                (it.value().is_array() && !it.value().empty() &&
                 (it.value().front().is_object() ||
                  it.value().front().is_array()))) {
                out += prefix + it.key() + ":\n";
                dump_text_to(it.value(), out, prefix + "  ");
            } else {
                out += prefix + it.key() + ": ";
                dump_text_to(it.value(), out, "");
                out += '\n';
            }
        }
    } else if (j.is_array()) {
        if (!prefix.empty()) {
            for (const auto &item : j) {
                out += prefix + "- ";
                if (item.is_object() || item.is_array()) {
                    std::string flat;
                    dump_json_to(item, flat);
                    out += flat;
                } else {
                    dump_text_to(item, out, "");
                }
                out += '\n';
            }
        } else {
            std::string flat;
            dump_json_to(j, flat);
            out += flat;
        }
    } else if (j.is_string()) {
        out += j.get<std::string>();
    } else if (j.is_boolean()) {
        out += j.get<bool>() ? "true" : "false";
    } else if (j.is_number_integer()) {
        out += std::to_string(j.get<long long>());
    } else if (j.is_number_unsigned()) {
        out += std::to_string(j.get<unsigned long long>());
    } else if (j.is_number_float()) {
        out += format_double(j.get<double>());
    } else {
        out += "null";
    }
}

/// Indented human-readable rendering of the same payload.
inline std::string dump_text(const OrderedJson &j) {
    std::string out;
    dump_text_to(j, out, "");
    return out;
}

inline OrderedJson complex_json(const Complex &c) {
    return OrderedJson::array({c.real(), c.imag()});
}

inline OrderedJson event_json(const Event &event) {
    OrderedJson arr = OrderedJson::array();
    for (const auto &label : event.sorted_labels()) {
        arr.push_back(label);
    }
    return arr;
}

inline OrderedJson events_json(const std::vector<Event> &events) {
    OrderedJson arr = OrderedJson::array();
    for (const auto &event : events) {
        arr.push_back(event_json(event));
    }
    return arr;
}

} // namespace report

} // namespace qmeasure

#endif // QMEASURE_REPORT_HPP
