#include <rakit/algebra.hh>
#include <rakit/amalgamation.hh>
#include <rakit/bounds.hh>
#include <rakit/cli.hh>
#include <rakit/errors.hh>
#include <rakit/network.hh>
#include <rakit/representation.hh>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

using nlohmann::ordered_json;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace rakit::cli
{
    namespace
    {
        struct Config
        {
            string command;
            vector<string> inputs;
            string algebra_path, first_element, second_element;
            bool machine = false;
            bool timings = false;
            bool witness = false;
            string witness_dir = ".";
            optional<size_t> max_base;
            unsigned threads = 1;
            optional<unsigned long long> budget;
            size_t size = 0;
            std::uint64_t seed = 0;
            bool injective = false;
        };

        struct Outcome
        {
            int code = exit_code::positive;
            string verdict;
            string text;
            ordered_json details = ordered_json::object();
        };

        auto read_file(const string & path) -> string
        {
            std::ifstream in{path, std::ios::binary};
            if (! in)
                throw InvalidInput{"cannot read file '" + path + "'"};
            std::ostringstream buffer;
            buffer << in.rdbuf();
            return buffer.str();
        }

        auto load_algebra(const string & path) -> RelationAlgebra
        {
            try {
                return parse_algebra(read_file(path));
            }
            catch (const ParseError & e) {
                throw ParseError{path + ": " + e.reason(), e.line(), e.column()};
            }
        }

        auto load_network(const RelationAlgebra & ra, const string & path) -> Network
        {
            try {
                return parse_network(ra, read_file(path));
            }
            catch (const ParseError & e) {
                throw ParseError{path + ": " + e.reason(), e.line(), e.column()};
            }
        }

        auto load_representation(const string & path) -> ConcreteRepresentation
        {
            try {
                return parse_representation(read_file(path));
            }
            catch (const ParseError & e) {
                throw ParseError{path + ": " + e.reason(), e.line(), e.column()};
            }
        }

        auto diagram_budget(const Config & config) -> unsigned long long
        {
            if (config.budget)
                return *config.budget;
            if (const char * env = std::getenv("RA_KIT_BUDGET"); env && *env) {
                char * end = nullptr;
                auto value = std::strtoull(env, &end, 10);
                if (*end != '\0')
                    throw InvalidInput{"RA_KIT_BUDGET must be a non-negative integer"};
                return value;
            }
            return default_diagram_budget;
        }

        auto report_text(const ValidationReport & report, Outcome & outcome) -> void
        {
            auto violations = ordered_json::array();
            for (const auto & v : report.violations) {
                outcome.text += "violation: " + to_string(v) + "\n";
                violations.push_back({{"law", v.law}, {"witness", v.witness}, {"detail", v.detail}});
            }
            for (const auto & w : report.warnings)
                outcome.text += "warning: " + w + "\n";
            outcome.details["violations"] = violations;
            outcome.details["warnings"] = report.warnings;
        }

        auto cmd_validate(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto report = validate_algebra(ra);
            Outcome o;
            o.code = report.ok() ? exit_code::positive : exit_code::negative;
            o.verdict = report.ok() ? "VALID" : "INVALID";
            o.text = o.verdict + " " + ra.name() + " (" + std::to_string(ra.size()) + " atoms, "
                + std::to_string(report.violations.size()) + " violations)\n";
            report_text(report, o);
            o.details["algebra"] = ra.name();
            return o;
        }

        auto cmd_compose(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto x = ra.parse_element(c.first_element), y = ra.parse_element(c.second_element);
            auto z = ra.compose(x, y);
            Outcome o;
            o.verdict = "OK";
            o.text = ra.format(z) + "\n";
            o.details["result"] = ra.format(z);
            return o;
        }

        auto cmd_pc(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto n = load_network(ra, c.inputs.at(1));
            auto normalized = normalize(ra, n);
            auto refined = normalized ? path_consistency(ra, *normalized) : std::nullopt;
            Outcome o;
            if (! refined) {
                o.code = exit_code::negative;
                o.verdict = "INCONSISTENT";
                o.text = "INCONSISTENT\n";
                return o;
            }
            o.verdict = "CONSISTENT";
            auto written = write_network(ra, *refined);
            o.text = "CONSISTENT\n" + written;
            o.details["network"] = written;
            return o;
        }

        auto cmd_solve(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto n = load_network(ra, c.inputs.at(1));
            SolveStats stats;
            auto witness = refine_solve(ra, n, &stats);
            Outcome o;
            o.details["decisions"] = stats.decisions;
            o.details["failures"] = stats.failures;
            if (! witness) {
                o.code = exit_code::negative;
                o.verdict = "UNSAT";
                o.text = "UNSAT\n";
                return o;
            }
            o.verdict = "SAT";
            auto written = write_network(ra, *witness);
            o.text = "SAT\n" + written;
            o.details["witness"] = written;
            return o;
        }

        auto cmd_atomic(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto n = load_network(ra, c.inputs.at(1));
            Outcome o;
            if (is_atomic(ra, n)) {
                o.verdict = "ATOMIC";
                o.text = "ATOMIC\n";
                return o;
            }
            o.code = exit_code::negative;
            o.verdict = "NOT_ATOMIC";
            string reason;
            for (size_t x = 0; x < n.size() && reason.empty(); ++x)
                for (size_t y = 0; y < n.size() && reason.empty(); ++y) {
                    auto label = n.label(x, y);
                    if (! label.is_atom())
                        reason = "label (" + n.node_name(x) + "," + n.node_name(y) + ") = " + ra.format(label) + " is not an atom";
                    else if (x == y && ! leq(label, ra.identity()))
                        reason = "loop at " + n.node_name(x) + " is not below Id";
                    else if (n.label(y, x) != ra.converse(label))
                        reason = "label (" + n.node_name(y) + "," + n.node_name(x) + ") is not the converse of (" + n.node_name(x) + ","
                            + n.node_name(y) + ")";
                }
            if (reason.empty())
                if (auto t = find_triangle_violation(ra, n)) {
                    auto [x, y, z] = *t;
                    reason = "triangle (" + n.node_name(x) + "," + n.node_name(y) + "," + n.node_name(z) + "): " + ra.format(n.label(x, z))
                        + " not in " + ra.format(n.label(x, y)) + ";" + ra.format(n.label(y, z));
                }
            o.text = "NOT ATOMIC: " + reason + "\n";
            o.details["reason"] = reason;
            return o;
        }

        auto cmd_amalgamation(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            AmalgamationOptions options;
            options.max_base = c.max_base;
            options.threads = c.threads;
            options.diagram_budget = diagram_budget(c);
            auto result = decide_amalgamation_property(ra, options);

            Outcome o;
            o.verdict = to_string(result.verdict);
            o.code = result.verdict == Verdict::yes ? exit_code::positive
                : result.verdict == Verdict::no     ? exit_code::negative
                                                    : exit_code::budget;
            o.text = o.verdict + "\n" + result.message + "\n";
            o.details["max_base"] = result.max_base;
            o.details["bases_checked"] = result.bases_checked;
            o.details["diagrams_checked"] = result.diagrams_checked;
            o.details["message"] = result.message;

            if (result.witness) {
                const auto & w = *result.witness;
                auto files = ordered_json::object();
                std::pair<const char *, const Network *> parts[] = {{"base", &w.base}, {"left", &w.left}, {"right", &w.right}};
                for (auto [role, net] : parts) {
                    auto content = write_network(ra, *net);
                    if (c.witness) {
                        auto path = (std::filesystem::path{c.witness_dir} / (ra.name() + "-witness-" + role + ".net")).string();
                        std::filesystem::create_directories(c.witness_dir);
                        std::ofstream file{path, std::ios::binary};
                        if (! (file << content))
                            throw InvalidInput{"cannot write witness file '" + path + "'"};
                        files[role] = path;
                        o.text += "witness " + string{role} + ": " + path + "\n";
                    }
                    else
                        o.text += "# " + string{role} + "\n" + content;
                    o.details["witness"][role] = content;
                }
                if (c.witness)
                    o.details["witness_files"] = files;
            }
            return o;
        }

        auto cmd_bounds(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            auto bs = generate_bounds(ra);
            Outcome o;
            o.verdict = "OK";
            o.text = write_bounds(ra, bs);
            o.details["F1"] = bs.count(BoundFamily::loops);
            o.details["F2"] = bs.count(BoundFamily::pairs);
            o.details["F3"] = bs.count(BoundFamily::triangles);
            o.details["bounds"] = o.text;
            return o;
        }

        auto cmd_modelcheck(const Config & c) -> Outcome
        {
            auto cr = load_representation(c.inputs.at(0));
            auto ra = derive_algebra(cr);
            auto n = load_network(ra, c.inputs.at(1));
            ModelCheckStats stats;
            auto assignment = model_check(cr, n, &stats);
            Outcome o;
            o.details["assignments_tried"] = stats.assignments;
            if (! assignment) {
                o.code = exit_code::negative;
                o.verdict = "UNSAT";
                o.text = "UNSAT\n";
                return o;
            }
            o.verdict = "SAT";
            o.text = "SAT\n";
            auto map = ordered_json::object();
            for (size_t x = 0; x < n.size(); ++x) {
                o.text += n.node_name(x) + " -> " + std::to_string((*assignment)[x]) + "\n";
                map[n.node_name(x)] = (*assignment)[x];
            }
            o.details["assignment"] = map;
            return o;
        }

        auto cmd_derive(const Config & c) -> Outcome
        {
            auto cr = load_representation(c.inputs.at(0));
            auto report = validate_representation(cr);
            Outcome o;
            if (! report.ok()) {
                o.code = exit_code::negative;
                o.verdict = "INVALID";
                o.text = "INVALID " + cr.name() + "\n";
                report_text(report, o);
                return o;
            }
            auto ra = derive_algebra(cr);
            o.verdict = "VALID";
            o.text = write_algebra(ra);
            o.details["algebra"] = o.text;
            return o;
        }

        auto cmd_grow(const Config & c) -> Outcome
        {
            auto ra = load_algebra(c.inputs.at(0));
            GrowOptions options;
            options.injective = c.injective;
            Outcome o;
            try {
                auto n = grow_limit(ra, c.size, c.seed, options);
                o.verdict = "OK";
                o.text = write_network(ra, n);
                o.details["network"] = o.text;
            }
            catch (const ExtensionFailed & e) {
                o.code = exit_code::negative;
                o.verdict = "EXTENSION_FAILED";
                o.text = "EXTENSION_FAILED: " + string{e.what()} + "\n";
                o.details["reason"] = e.what();
            }
            return o;
        }

        auto emit(const Config & c, const Outcome & o, optional<double> millis, std::ostream & out) -> void
        {
            if (! c.machine) {
                out << o.text;
                return;
            }
            ordered_json doc;
            doc["command"] = c.command;
            doc["inputs"] = c.inputs;
            doc["verdict"] = o.verdict;
            doc["exit_code"] = o.code;
            doc["details"] = o.details;
            if (millis)
                doc["timings"] = {{"total_ms", *millis}};
            out << doc.dump(2) << '\n';
        }

        auto emit_error(const Config & c, int code, const string & kind, const string & reason, std::ostream & out, std::ostream & err)
            -> int
        {
            err << "error: " << kind << ": " << reason << '\n';
            if (c.machine) {
                ordered_json doc;
                doc["command"] = c.command;
                doc["verdict"] = "ERROR";
                doc["exit_code"] = code;
                doc["error"] = {{"kind", kind}, {"reason", reason}};
                out << doc.dump(2) << '\n';
            }
            return code;
        }
    }

    auto run(const vector<string> & args, std::ostream & out, std::ostream & err) -> int
    {
        Config c;
        CLI::App app{"Finite relation algebras: composition tables, network satisfaction, representations, amalgamation", "ra-kit"};
        app.require_subcommand(1, 1);
        app.add_flag("--machine", c.machine, "Emit one JSON document instead of text");
        app.add_flag("--timings", c.timings, "Include wall-clock timings in machine output");

        using Handler = std::function<Outcome(const Config &)>;
        vector<std::pair<CLI::App *, Handler>> commands;
        auto add = [&](const string & name, const string & help, Handler handler) {
            auto sub = app.add_subcommand(name, help);
            commands.emplace_back(sub, std::move(handler));
            return sub;
        };
        auto input = [&](CLI::App * sub, const string & name, const string & help) {
            sub->add_option(name, c.inputs, help)->required()->check(CLI::ExistingFile);
        };

        auto validate = add("validate", "Check the relation algebra laws of an algebra file", cmd_validate);
        input(validate, "algebra", "Algebra file");

        auto compose = add("compose", "Compose two elements, given as comma-separated atoms", cmd_compose);
        compose->add_option("algebra", c.algebra_path, "Algebra file")->required()->check(CLI::ExistingFile);
        compose->add_option("x", c.first_element, "Left element, e.g. lt,eq")->required();
        compose->add_option("y", c.second_element, "Right element")->required();

        for (auto [name, help, handler] : {std::tuple{"pc", "Path consistency", Handler{cmd_pc}},
                 std::tuple{"solve", "Find an atomic refinement", Handler{cmd_solve}},
                 std::tuple{"atomic", "Check whether a network is atomic", Handler{cmd_atomic}}}) {
            auto sub = add(name, help, handler);
            sub->add_option("files", c.inputs, "Algebra file, then network file")->required()->expected(2)->check(CLI::ExistingFile);
        }

        auto amalgamation = add("amalgamation", "Decide the amalgamation property of atomic networks", cmd_amalgamation);
        input(amalgamation, "algebra", "Algebra file");
        amalgamation->add_flag("--witness", c.witness, "Write a failing diagram as three network files");
        amalgamation->add_option("--witness-dir", c.witness_dir, "Directory for witness files")->capture_default_str();
        amalgamation->add_option("--max-base", c.max_base, "Largest base size to check (default: number of atoms)");
        amalgamation->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1U, 1024U))->capture_default_str();
        amalgamation->add_option("--budget", c.budget, "Diagram budget (default: RA_KIT_BUDGET or 50000000)");

        auto bounds = add("bounds", "Generate forbidden substructures", cmd_bounds);
        input(bounds, "algebra", "Algebra file");

        auto modelcheck = add("modelcheck", "Satisfy a network in a finite representation", cmd_modelcheck);
        modelcheck->add_option("files", c.inputs, "Representation file, then network file")->required()->expected(2)->check(CLI::ExistingFile);

        auto derive = add("derive", "Validate a representation and print its algebra", cmd_derive);
        input(derive, "representation", "Representation file");

        auto grow = add("grow", "Grow a random atomic network", cmd_grow);
        input(grow, "algebra", "Algebra file");
        grow->add_option("--size", c.size, "Number of nodes")->required();
        grow->add_option("--seed", c.seed, "Random seed")->capture_default_str();
        grow->add_flag("--injective", c.injective, "Never relate distinct nodes by an identity atom");

        vector<string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        }
        catch (const CLI::CallForHelp & e) {
            return app.exit(e, out, err);
        }
        catch (const CLI::CallForAllHelp & e) {
            return app.exit(e, out, err);
        }
        catch (const CLI::ParseError & e) {
            return emit_error(c, exit_code::usage, "usage", e.what(), out, err);
        }

        Handler handler;
        for (const auto & [sub, h] : commands)
            if (sub->parsed()) {
                c.command = sub->get_name();
                if (! c.algebra_path.empty())
                    c.inputs.insert(c.inputs.begin(), c.algebra_path);
                handler = h;
            }

        try {
            auto start = std::chrono::steady_clock::now();
            auto outcome = handler(c);
            optional<double> millis;
            if (c.timings)
                millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            emit(c, outcome, millis, out);
            return outcome.code;
        }
        catch (const ParseError & e) {
            return emit_error(c, exit_code::usage, "parse", e.what(), out, err);
        }
        catch (const BudgetExceeded & e) {
            return emit_error(c, exit_code::budget, "budget", e.what(), out, err);
        }
        catch (const InvalidInput & e) {
            return emit_error(c, exit_code::usage, "input", e.what(), out, err);
        }
        catch (const std::filesystem::filesystem_error & e) {
            return emit_error(c, exit_code::usage, "io", e.what(), out, err);
        }
    }
}
