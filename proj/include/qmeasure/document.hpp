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
 * @file document.hpp
 * The JSON system document and command dispatch. A document fixes the
 * quantum measure one of three ways: full Hilbert-space data ("system"),
 * an amplitude list ("amplitudes"), or explicit singleton/pair measures
 * ("measure_table", completed through the reconstruction identity).
 *
 * Parsing is strict: malformed text, schema violations and invariant
 * violations are distinct error classes, each pointing at the offending
 * field. Reports are deterministic; wall time never enters them.
 */
#ifndef QMEASURE_DOCUMENT_HPP
#define QMEASURE_DOCUMENT_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmeasure/classical_domain.hpp"
#include "qmeasure/coevent_solver.hpp"
#include "qmeasure/errors.hpp"
#include "qmeasure/event_algebra.hpp"
#include "qmeasure/preclusion.hpp"
#include "qmeasure/prediction.hpp"
#include "qmeasure/quantum_measure.hpp"
#include "qmeasure/report.hpp"
#include "qmeasure/system_model.hpp"
#include "qmeasure/valuation_logic.hpp"

namespace qmeasure {

struct Tolerances {
    double validation = limits::kValidationTol;
    double preclusion = limits::kPreclusionTol;
    double cournot = limits::kCournotEpsilon;
};

enum class DocumentMode { System, Amplitudes, MeasureTableMode };

namespace doc_detail {

using Json = nlohmann::json;

inline const Json &require_field(const Json &j, const std::string &key,
                                 const std::string &path) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError("missing field '" + path + key + "'");
    }
    return j.at(key);
}

inline double require_number(const Json &j, const std::string &path) {
    if (!j.is_number()) {
        throw SchemaError("expected a number at '" + path + "'");
    }
    return j.get<double>();
}

inline std::string require_string(const Json &j, const std::string &path) {
    if (!j.is_string()) {
        throw SchemaError("expected a string at '" + path + "'");
    }
    return j.get<std::string>();
}

/// A complex scalar: plain number or [re, im].
inline Complex parse_complex(const Json &j, const std::string &path) {
    if (j.is_number()) {
        return Complex(j.get<double>(), 0.0);
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    throw SchemaError("expected a complex number ([re, im] or plain real) at '" +
                      path + "'");
}

inline CMatrix parse_square_matrix(const Json &j, std::size_t dim,
                                   const std::string &path) {
    if (!j.is_array() || j.size() != dim) {
        throw SchemaError("expected a " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " matrix at '" + path + "'");
    }
    CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        const Json &row = j[r];
        if (!row.is_array() || row.size() != dim) {
            throw SchemaError("expected a row of " + std::to_string(dim) +
                              " entries at '" + path + "[" + std::to_string(r) +
                              "]'");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                parse_complex(row[c], path + "[" + std::to_string(r) + "][" +
                                          std::to_string(c) + "]");
        }
    }
    return m;
}

inline CVector parse_vector(const Json &j, std::size_t dim,
                            const std::string &path) {
    if (!j.is_array() || j.size() != dim) {
        throw SchemaError("expected a vector of " + std::to_string(dim) +
                          " entries at '" + path + "'");
    }
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v(static_cast<Eigen::Index>(i)) =
            parse_complex(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

inline OrderedJson matrix_json(const CMatrix &m) {
    OrderedJson rows = OrderedJson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        OrderedJson row = OrderedJson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(report::complex_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace doc_detail

class SystemDocument {
  public:
    DocumentMode mode;
    Tolerances tolerances;
    std::optional<HistoriesSystem> system;
    std::optional<AmplitudeTable> amplitudes;
    std::optional<MeasureTable> table;
    /// measure_table entries as given (labels, mu), for re-serialization.
    std::vector<std::pair<std::vector<std::string>, double>> table_entries;

    SampleSpace space() const {
        switch (mode) {
        case DocumentMode::System:
            return induced_sample_space(*system);
        case DocumentMode::Amplitudes:
            return amplitudes->space();
        case DocumentMode::MeasureTableMode:
            return table->space();
        }
        throw DomainError("unreachable document mode");
    }

    /// The decoherence matrix the document fixes. Construction is where
    /// numeric invariants (hermiticity, normalization, positivity) bite.
    DecoherenceMatrix matrix() const {
        switch (mode) {
        case DocumentMode::System:
            return decoherence_matrix(*system, tolerances.validation);
        case DocumentMode::Amplitudes:
            return from_amplitudes(*amplitudes, tolerances.validation);
        case DocumentMode::MeasureTableMode:
            return decoherence_from_table(*table, tolerances.validation);
        }
        throw DomainError("unreachable document mode");
    }
};

inline SystemDocument parse_document(const std::string &text) {
    doc_detail::Json root;
    try {
        root = doc_detail::Json::parse(text);
    } catch (const doc_detail::Json::parse_error &e) {
        throw MalformedInputError(std::string("not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw SchemaError("document root must be an object");
    }

    SystemDocument doc;
    const std::string mode =
        doc_detail::require_string(doc_detail::require_field(root, "mode", ""),
                                   "mode");
    if (mode == "system") {
        doc.mode = DocumentMode::System;
    } else if (mode == "amplitudes") {
        doc.mode = DocumentMode::Amplitudes;
    } else if (mode == "measure_table") {
        doc.mode = DocumentMode::MeasureTableMode;
    } else {
        throw SchemaError("unknown mode '" + mode +
                          "'; expected system, amplitudes or measure_table");
    }

    // Exactly one mode payload may be present.
    const bool has_system = root.contains("dimension") ||
                            root.contains("initial_state") ||
                            root.contains("steps");
    const bool has_amplitudes = root.contains("amplitudes");
    const bool has_table = root.contains("measure_table");
    if ((has_system ? 1 : 0) + (has_amplitudes ? 1 : 0) + (has_table ? 1 : 0) !=
        1) {
        throw SchemaError("exactly one of the system payload "
                          "(dimension/initial_state/steps), 'amplitudes' and "
                          "'measure_table' must be present");
    }
    if ((doc.mode == DocumentMode::System && !has_system) ||
        (doc.mode == DocumentMode::Amplitudes && !has_amplitudes) ||
        (doc.mode == DocumentMode::MeasureTableMode && !has_table)) {
        throw SchemaError("payload does not match mode '" + mode + "'");
    }

    if (root.contains("tolerances")) {
        const auto &tol = root.at("tolerances");
        if (!tol.is_object()) {
            throw SchemaError("'tolerances' must be an object");
        }
        auto read = [&tol](const char *key, double fallback) {
            if (!tol.contains(key)) {
                return fallback;
            }
            const double v =
                doc_detail::require_number(tol.at(key),
                                           std::string("tolerances.") + key);
            if (!(v > 0.0)) {
                throw SchemaError(std::string("tolerances.") + key +
                                  " must be positive");
            }
            return v;
        };
        doc.tolerances.validation = read("validation", doc.tolerances.validation);
        doc.tolerances.preclusion = read("preclusion", doc.tolerances.preclusion);
        doc.tolerances.cournot = read("cournot", doc.tolerances.cournot);
        if (!(doc.tolerances.cournot < 1.0)) {
            throw SchemaError("tolerances.cournot must be below 1");
        }
    }

    try {
        if (doc.mode == DocumentMode::System) {
            const auto &dim_json = doc_detail::require_field(root, "dimension", "");
            if (!dim_json.is_number_unsigned() || dim_json.get<std::size_t>() < 2) {
                throw SchemaError("'dimension' must be an integer >= 2");
            }
            const std::size_t d = dim_json.get<std::size_t>();

            const auto &init = doc_detail::require_field(root, "initial_state", "");
            std::optional<InitialState> initial;
            if (init.is_object() && init.contains("vector")) {
                initial = InitialState::pure(doc_detail::parse_vector(
                    init.at("vector"), d, "initial_state.vector"));
            } else if (init.is_object() && init.contains("density")) {
                initial = InitialState(doc_detail::parse_square_matrix(
                    init.at("density"), d, "initial_state.density"));
            } else {
                throw SchemaError("'initial_state' must be an object with a "
                                  "'vector' or 'density' field");
            }

            const auto &steps_json = doc_detail::require_field(root, "steps", "");
            if (!steps_json.is_array() || steps_json.empty()) {
                throw SchemaError("'steps' must be a nonempty array");
            }
            std::vector<TimeStep> steps;
            for (std::size_t s = 0; s < steps_json.size(); ++s) {
                const std::string where = "steps[" + std::to_string(s) + "]";
                const auto &step_json = steps_json[s];
                TimeStep step;
                step.unitary = doc_detail::parse_square_matrix(
                    doc_detail::require_field(step_json, "unitary", where + "."),
                    d, where + ".unitary");
                const auto &projs = doc_detail::require_field(
                    step_json, "projectors", where + ".");
                if (!projs.is_array() || projs.empty()) {
                    throw SchemaError("'" + where +
                                      ".projectors' must be a nonempty array");
                }
                for (std::size_t p = 0; p < projs.size(); ++p) {
                    const std::string pwhere =
                        where + ".projectors[" + std::to_string(p) + "]";
                    ProjectorOutcome outcome;
                    outcome.label = doc_detail::require_string(
                        doc_detail::require_field(projs[p], "label",
                                                  pwhere + "."),
                        pwhere + ".label");
                    outcome.matrix = doc_detail::parse_square_matrix(
                        doc_detail::require_field(projs[p], "matrix",
                                                  pwhere + "."),
                        d, pwhere + ".matrix");
                    step.projectors.push_back(std::move(outcome));
                }
                steps.push_back(std::move(step));
            }
            doc.system.emplace(std::move(*initial), std::move(steps));
            induced_sample_space(*doc.system); // label uniqueness
        } else if (doc.mode == DocumentMode::Amplitudes) {
            const auto &amps = root.at("amplitudes");
            if (!amps.is_array() || amps.empty()) {
                throw SchemaError("'amplitudes' must be a nonempty array");
            }
            std::vector<std::string> labels;
            std::vector<Complex> values;
            std::vector<std::string> classes;
            for (std::size_t i = 0; i < amps.size(); ++i) {
                const std::string where = "amplitudes[" + std::to_string(i) + "]";
                labels.push_back(doc_detail::require_string(
                    doc_detail::require_field(amps[i], "history_label",
                                              where + "."),
                    where + ".history_label"));
                values.push_back(doc_detail::parse_complex(
                    doc_detail::require_field(amps[i], "amplitude", where + "."),
                    where + ".amplitude"));
                classes.push_back(
                    amps[i].contains("final_class")
                        ? doc_detail::require_string(amps[i].at("final_class"),
                                                     where + ".final_class")
                        : std::string());
            }
            doc.amplitudes.emplace(SampleSpace(std::move(labels)),
                                   std::move(values), std::move(classes));
        } else {
            const auto &entries = root.at("measure_table");
            if (!entries.is_array() || entries.empty()) {
                throw SchemaError("'measure_table' must be a nonempty array");
            }
            std::vector<std::string> labels;
            std::set<std::string> label_set;
            std::vector<std::pair<std::vector<std::string>, double>> parsed;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                const std::string where =
                    "measure_table[" + std::to_string(i) + "]";
                const auto &ev = doc_detail::require_field(entries[i], "event",
                                                           where + ".");
                if (!ev.is_array() || ev.empty()) {
                    throw SchemaError("'" + where +
                                      ".event' must be a nonempty label array");
                }
                std::vector<std::string> event_labels;
                for (std::size_t l = 0; l < ev.size(); ++l) {
                    event_labels.push_back(doc_detail::require_string(
                        ev[l], where + ".event[" + std::to_string(l) + "]"));
                }
                const double mu = doc_detail::require_number(
                    doc_detail::require_field(entries[i], "mu", where + "."),
                    where + ".mu");
                if (event_labels.size() == 1 &&
                    label_set.insert(event_labels[0]).second) {
                    labels.push_back(event_labels[0]);
                }
                parsed.emplace_back(std::move(event_labels), mu);
            }
            if (labels.empty()) {
                throw SchemaError("measure_table lists no singleton events; "
                                  "the history space is undefined");
            }
            SampleSpace space(labels);
            MeasureTable table(space);
            std::set<std::vector<std::size_t>> seen;
            std::vector<std::pair<Event, double>> larger;
            bool has_full = false;
            for (const auto &[event_labels, mu] : parsed) {
                std::vector<std::size_t> indices;
                for (const auto &label : event_labels) {
                    if (!space.has_label(label)) {
                        throw SchemaError(
                            "measure_table references history '" + label +
                            "' that never appears as a singleton entry");
                    }
                    indices.push_back(space.index_of(label));
                }
                std::sort(indices.begin(), indices.end());
                if (std::adjacent_find(indices.begin(), indices.end()) !=
                    indices.end()) {
                    throw SchemaError("measure_table event repeats a label");
                }
                if (!seen.insert(indices).second) {
                    throw SchemaError("measure_table lists an event twice");
                }
                if (indices.size() == 1) {
                    table.set_singleton(indices[0], mu);
                } else if (indices.size() == 2) {
                    table.set_pair(indices[0], indices[1], mu);
                } else {
                    larger.emplace_back(space.event_from_indices(indices), mu);
                }
                if (indices.size() == space.size()) {
                    has_full = true;
                }
            }
            if (!has_full) {
                throw SchemaError("measure_table lacks the full-space entry; "
                                  "normalization is unverifiable");
            }
            for (std::size_t i = 0; i < space.size(); ++i) {
                for (std::size_t j = i + 1; j < space.size(); ++j) {
                    if (!table.has_pair(i, j)) {
                        throw SchemaError(
                            "measure_table misses the pair {" + space.label(i) +
                            ", " + space.label(j) +
                            "}; singletons and pairs fix the measure");
                    }
                }
            }
            // Entries beyond pairs must agree with the reconstruction.
            for (const auto &[event, mu] : larger) {
                const double rebuilt = reconstruct_measure(table, event);
                if (std::abs(rebuilt - mu) > doc.tolerances.validation) {
                    throw InvariantError(
                        "measure_table entry for a " +
                        std::to_string(event.count()) +
                        "-history event disagrees with the value " +
                        "reconstructed from singletons and pairs (" +
                        report::format_double(mu) + " vs " +
                        report::format_double(rebuilt) + ")");
                }
            }
            doc.table.emplace(std::move(table));
            doc.table_entries = std::move(parsed);
        }
    } catch (const SchemaError &) {
        throw;
    } catch (const InvariantError &) {
        throw;
    } catch (const CapacityError &) {
        throw;
    } catch (const Error &e) {
        // Construction-level domain errors on document input are schema
        // problems from the caller's point of view.
        throw SchemaError(e.what());
    }
    return doc;
}

inline OrderedJson document_json(const SystemDocument &doc) {
    OrderedJson out;
    switch (doc.mode) {
    case DocumentMode::System:
        out["mode"] = "system";
        break;
    case DocumentMode::Amplitudes:
        out["mode"] = "amplitudes";
        break;
    case DocumentMode::MeasureTableMode:
        out["mode"] = "measure_table";
        break;
    }
    out["tolerances"] = {{"validation", doc.tolerances.validation},
                         {"preclusion", doc.tolerances.preclusion},
                         {"cournot", doc.tolerances.cournot}};
    if (doc.mode == DocumentMode::System) {
        out["dimension"] = doc.system->dimension();
        out["initial_state"] = {
            {"density", doc_detail::matrix_json(doc.system->initial().density())}};
        OrderedJson steps = OrderedJson::array();
        for (const auto &step : doc.system->steps()) {
            OrderedJson sj;
            sj["unitary"] = doc_detail::matrix_json(step.unitary);
            OrderedJson projs = OrderedJson::array();
            for (const auto &proj : step.projectors) {
                OrderedJson pj;
                pj["label"] = proj.label;
                pj["matrix"] = doc_detail::matrix_json(proj.matrix);
                projs.push_back(std::move(pj));
            }
            sj["projectors"] = std::move(projs);
            steps.push_back(std::move(sj));
        }
        out["steps"] = std::move(steps);
    } else if (doc.mode == DocumentMode::Amplitudes) {
        OrderedJson amps = OrderedJson::array();
        const auto &table = *doc.amplitudes;
        for (std::size_t i = 0; i < table.space().size(); ++i) {
            OrderedJson entry;
            entry["history_label"] = table.space().label(i);
            entry["amplitude"] = report::complex_json(table.amplitudes()[i]);
            entry["final_class"] = table.final_classes()[i];
            amps.push_back(std::move(entry));
        }
        out["amplitudes"] = std::move(amps);
    } else {
        // Entries sorted by size then label order for a canonical form.
        std::vector<std::pair<std::vector<std::string>, double>> entries =
            doc.table_entries;
        for (auto &[labels, mu] : entries) {
            std::sort(labels.begin(), labels.end());
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto &a, const auto &b) {
                      if (a.first.size() != b.first.size()) {
                          return a.first.size() < b.first.size();
                      }
                      return a.first < b.first;
                  });
        OrderedJson list = OrderedJson::array();
        for (const auto &[labels, mu] : entries) {
            OrderedJson entry;
            entry["event"] = labels;
            entry["mu"] = mu;
            list.push_back(std::move(entry));
        }
        out["measure_table"] = std::move(list);
    }
    return out;
}

inline std::string serialize_document(const SystemDocument &doc) {
    return report::dump_json(document_json(doc));
}

// ---- command dispatch ------------------------------------------------------

struct RunRequest {
    std::string command;
    /// measure: labels of the queried event.
    std::vector<std::string> event_labels;
    /// consistent: partition cells as label arrays.
    std::optional<std::vector<std::vector<std::string>>> cells;
    /// predict: named declared events.
    std::optional<std::vector<std::pair<std::string, std::vector<std::string>>>>
        declared;
    /// compare: the second document.
    std::shared_ptr<SystemDocument> other;
    /// Overrides the document's preclusion epsilon (cournot for predict).
    std::optional<double> epsilon;
};

namespace doc_detail {

inline OrderedJson input_echo(const SystemDocument &doc) {
    OrderedJson echo;
    switch (doc.mode) {
    case DocumentMode::System:
        echo["mode"] = "system";
        break;
    case DocumentMode::Amplitudes:
        echo["mode"] = "amplitudes";
        break;
    case DocumentMode::MeasureTableMode:
        echo["mode"] = "measure_table";
        break;
    }
    echo["histories"] = doc.space().size();
    return echo;
}

} // namespace doc_detail

/// Run one command against a parsed document. The report depends only on
/// the document, the request and the tolerances.
inline OrderedJson run_command(const SystemDocument &doc,
                               const RunRequest &request) {
    OrderedJson report;
    report["command"] = request.command;
    report["input"] = doc_detail::input_echo(doc);
    report["tolerances"] = {{"validation", doc.tolerances.validation},
                            {"preclusion", doc.tolerances.preclusion},
                            {"cournot", doc.tolerances.cournot}};
    OrderedJson results;

    const double preclusion_eps =
        request.epsilon.value_or(doc.tolerances.preclusion);

    if (request.command == "validate") {
        OrderedJson issues = OrderedJson::array();
        if (doc.mode == DocumentMode::System) {
            const ValidationReport vr =
                validate_system(*doc.system, doc.tolerances.validation);
            for (const auto &issue : vr.issues) {
                issues.push_back({{"component", issue.component},
                                  {"problem", issue.problem},
                                  {"deviation", issue.deviation}});
            }
        }
        if (issues.empty()) {
            try {
                doc.matrix();
            } catch (const Error &e) {
                issues.push_back({{"component", "decoherence_matrix"},
                                  {"problem", std::string(e.what())},
                                  {"deviation", OrderedJson()}});
            }
        }
        results["valid"] = issues.empty();
        results["issues"] = std::move(issues);
    } else if (request.command == "measure") {
        const DecoherenceMatrix d = doc.matrix();
        const Event event = d.space().event_of(request.event_labels);
        results["event"] = report::event_json(event);
        results["mu"] = measure(d, event);
    } else if (request.command == "preclude") {
        const DecoherenceMatrix d = doc.matrix();
        const PrecludedFamily family = enumerate_precluded(d, preclusion_eps);
        results["epsilon"] = family.epsilon();
        results["count"] = family.events().size();
        OrderedJson events = OrderedJson::array();
        for (const auto &event : family.events()) {
            events.push_back({{"event", report::event_json(event)},
                              {"mu", measure(d, event)}});
        }
        results["events"] = std::move(events);
        results["maximal"] = report::events_json(family.maximal());
    } else if (request.command == "zerocover") {
        const DecoherenceMatrix d = doc.matrix();
        const PrecludedFamily family = enumerate_precluded(d, preclusion_eps);
        const auto cover = find_zero_cover(family);
        results["epsilon"] = family.epsilon();
        results["found"] = cover.has_value();
        if (cover) {
            results["cover"] = report::events_json(cover->cover);
            results["certified"] =
                certify_zero_cover(d, cover->cover, preclusion_eps);
        }
    } else if (request.command == "coevents") {
        const DecoherenceMatrix d = doc.matrix();
        const CoeventSet set = solve_coevents(d, preclusion_eps);
        results["epsilon"] = set.epsilon;
        results["count"] = set.coevents.size();
        results["coevents"] = report::events_json(set.coevents);
    } else if (request.command == "partition") {
        const DecoherenceMatrix d = doc.matrix();
        const CoeventSet set = solve_coevents(d, preclusion_eps);
        const Partition partition =
            principle_classical_partition(set, d.space());
        results["epsilon"] = set.epsilon;
        OrderedJson cells = report::events_json(partition.cells());
        std::sort(cells.begin(), cells.end());
        results["cells"] = std::move(cells);
        results["finest"] = verify_finest(partition, set);
    } else if (request.command == "consistent") {
        if (!request.cells) {
            throw SchemaError("'consistent' needs a partition");
        }
        const DecoherenceMatrix d = doc.matrix();
        std::vector<Event> cells;
        for (const auto &labels : *request.cells) {
            cells.push_back(d.space().event_of(labels));
        }
        const Partition partition(std::move(cells));
        OrderedJson cell_json = report::events_json(partition.cells());
        std::sort(cell_json.begin(), cell_json.end());
        results["partition"] = std::move(cell_json);
        results["tolerance"] = doc.tolerances.validation;
        results["consistent"] = is_consistent_partition(
            d, partition, doc.tolerances.validation);
    } else if (request.command == "predict") {
        if (!request.declared) {
            throw SchemaError("'predict' needs a declared-events file");
        }
        const DecoherenceMatrix d = doc.matrix();
        const double eps = request.epsilon.value_or(doc.tolerances.cournot);
        const PredictionConfig config(
            eps, std::to_string(request.declared->size()) +
                     " events declared ahead of evaluation");
        std::vector<std::pair<std::string, Event>> declared;
        for (const auto &[name, labels] : *request.declared) {
            declared.emplace_back(name, d.space().event_of(labels));
        }
        const CournotReport cr = cournot_report(d, declared, config);
        results["epsilon"] = cr.epsilon;
        results["declared_count"] = cr.declared_count;
        OrderedJson entries = OrderedJson::array();
        for (const auto &entry : cr.entries) {
            entries.push_back(
                {{"name", entry.name},
                 {"event", report::event_json(entry.event)},
                 {"measure", entry.mu},
                 {"epsilon", cr.epsilon},
                 {"approximately_precluded", entry.approximately_precluded}});
        }
        results["events"] = std::move(entries);
        results["note"] = cr.note;
    } else if (request.command == "compare") {
        if (!request.other) {
            throw SchemaError("'compare' needs a second document");
        }
        const DecoherenceMatrix d1 = doc.matrix();
        const DecoherenceMatrix d2 = request.other->matrix();
        const CoeventSet set1 = solve_coevents(d1, preclusion_eps);
        const CoeventSet set2 = solve_coevents(d2, preclusion_eps);
        results["epsilon"] = preclusion_eps;
        results["coevents_a"] = report::events_json(set1.coevents);
        results["coevents_b"] = report::events_json(set2.coevents);
        results["disjoint"] = coevent_sets_disjoint(set1, set2);
        OrderedJson common = OrderedJson::array();
        for (const auto &c : set1.coevents) {
            if (set2.contains(c)) {
                common.push_back(report::event_json(c));
            }
        }
        results["common"] = std::move(common);
    } else {
        throw SchemaError("unknown command '" + request.command + "'");
    }

    report["results"] = std::move(results);
    return report;
}

/// Partition file: JSON array of label arrays.
inline std::vector<std::vector<std::string>>
parse_partition_file(const std::string &text) {
    doc_detail::Json j;
    try {
        j = doc_detail::Json::parse(text);
    } catch (const doc_detail::Json::parse_error &e) {
        throw MalformedInputError(std::string("partition file: ") + e.what());
    }
    if (!j.is_array() || j.empty()) {
        throw SchemaError("partition file must be a nonempty array of label "
                          "arrays");
    }
    std::vector<std::vector<std::string>> cells;
    for (std::size_t c = 0; c < j.size(); ++c) {
        if (!j[c].is_array() || j[c].empty()) {
            throw SchemaError("partition cell " + std::to_string(c) +
                              " must be a nonempty label array");
        }
        std::vector<std::string> labels;
        for (std::size_t l = 0; l < j[c].size(); ++l) {
            labels.push_back(doc_detail::require_string(
                j[c][l], "cell[" + std::to_string(c) + "][" +
                             std::to_string(l) + "]"));
        }
        cells.push_back(std::move(labels));
    }
    return cells;
}

/// Declared-events file: JSON array of {name?, event: [labels]}.
inline std::vector<std::pair<std::string, std::vector<std::string>>>
parse_declared_file(const std::string &text) {
    doc_detail::Json j;
    try {
        j = doc_detail::Json::parse(text);
    } catch (const doc_detail::Json::parse_error &e) {
        throw MalformedInputError(std::string("declared-events file: ") +
                                  e.what());
    }
    if (!j.is_array()) {
        throw SchemaError("declared-events file must be an array");
    }
    std::vector<std::pair<std::string, std::vector<std::string>>> declared;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "declared[" + std::to_string(i) + "]";
        const auto &ev =
            doc_detail::require_field(j[i], "event", where + ".");
        if (!ev.is_array() || ev.empty()) {
            throw SchemaError("'" + where +
                              ".event' must be a nonempty label array");
        }
        std::vector<std::string> labels;
        for (std::size_t l = 0; l < ev.size(); ++l) {
            labels.push_back(doc_detail::require_string(
                ev[l], where + ".event[" + std::to_string(l) + "]"));
        }
        std::string name = j[i].contains("name")
                               ? doc_detail::require_string(j[i].at("name"),
                                                            where + ".name")
                               : "event-" + std::to_string(i);
        declared.emplace_back(std::move(name), std::move(labels));
    }
    return declared;
}

} // namespace qmeasure

#endif // QMEASURE_DOCUMENT_HPP
