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
 * qmeasure command line.
 *
 *   qmeasure <command> --input <document.json> [--epsilon <v>]
 *            [--format json|text] [--out <file>]
 *
 * Commands: validate, measure <labels...>, preclude, zerocover,
 * coevents, partition, consistent <partition.json>,
 * predict <declared.json>, compare <second-document.json>.
 *
 * Exit codes: 0 success, 2 schema/input error, 3 capacity error,
 * 4 domain error. Reports are deterministic; wall time goes to stderr.
 */

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmeasure/qmeasure.hpp"

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw qmeasure::SchemaError("cannot open file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"finite-histories quantum measure toolkit"};
    app.require_subcommand(1);

    std::string input_path;
    std::string format = "json";
    std::string out_path;
    double epsilon = -1.0;

    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--input", input_path, "system document (JSON)")
            ->required();
        cmd->add_option("--epsilon", epsilon,
                        "override the preclusion tolerance (cournot "
                        "tolerance for predict)");
        cmd->add_option("--format", format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", out_path, "write the report here instead of "
                                           "stdout");
    };

    std::vector<std::string> measure_labels;
    std::string partition_path;
    std::string declared_path;
    std::string other_path;

    add_common(app.add_subcommand("validate", "check every system invariant"));
    auto *measure_cmd =
        app.add_subcommand("measure", "quantum measure of one event");
    measure_cmd
        ->add_option("labels", measure_labels, "history labels of the event")
        ->required();
    add_common(measure_cmd);
    add_common(app.add_subcommand("preclude",
                                  "enumerate measure-zero events"));
    add_common(app.add_subcommand("zerocover",
                                  "find a zero cover of the history space"));
    add_common(app.add_subcommand("coevents",
                                  "solve for the complete coevent set"));
    add_common(app.add_subcommand("partition",
                                  "principle classical partition"));
    auto *consistent_cmd = app.add_subcommand(
        "consistent", "measure-level consistency of a partition");
    consistent_cmd
        ->add_option("partition", partition_path,
                     "JSON file: array of label arrays")
        ->required();
    add_common(consistent_cmd);
    auto *predict_cmd =
        app.add_subcommand("predict", "Cournot report for declared events");
    predict_cmd
        ->add_option("declared", declared_path,
                     "JSON file: [{name, event: [labels]}, ...]")
        ->required();
    add_common(predict_cmd);
    auto *compare_cmd = app.add_subcommand(
        "compare", "coevent-set disjointness of two documents");
    compare_cmd->add_option("second", other_path, "second system document")
        ->required();
    add_common(compare_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const qmeasure::SystemDocument doc =
            qmeasure::parse_document(read_file(input_path));

        qmeasure::RunRequest request;
        request.command = app.get_subcommands().front()->get_name();
        if (epsilon >= 0.0) {
            request.epsilon = epsilon;
        }
        if (request.command == "measure") {
            request.event_labels = measure_labels;
        } else if (request.command == "consistent") {
            request.cells =
                qmeasure::parse_partition_file(read_file(partition_path));
        } else if (request.command == "predict") {
            request.declared =
                qmeasure::parse_declared_file(read_file(declared_path));
        } else if (request.command == "compare") {
            request.other = std::make_shared<qmeasure::SystemDocument>(
                qmeasure::parse_document(read_file(other_path)));
        }

        const qmeasure::OrderedJson report =
            qmeasure::run_command(doc, request);
        const std::string rendered = format == "json"
                                         ? qmeasure::report::dump_json(report)
                                         : qmeasure::report::dump_text(report);
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                throw qmeasure::SchemaError("cannot write file '" + out_path +
                                            "'");
            }
            out << rendered;
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::steady_clock::now() - started);
        std::cerr << "wall-time: " << elapsed.count() << " us\n";
        return 0;
    } catch (const qmeasure::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
