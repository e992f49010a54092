// ============================================================================
// aspc/cli.hpp — subcommand dispatch for the aspc executable
// ============================================================================
//
// Exposed as a function over argument vectors and streams so the test suite
// can drive it without spawning processes.  Exit codes: 0 success, 2 when the
// input program is Rejected, 1 for faults (parse errors, missing files,
// unknown flags).  Results go to the output stream, diagnostics to the error
// stream.
//
// ============================================================================

#ifndef ASPC_CLI_HPP
#define ASPC_CLI_HPP

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aspc/analysis.hpp"
#include "aspc/ast.hpp"
#include "aspc/completion.hpp"
#include "aspc/difftest.hpp"
#include "aspc/evaluator.hpp"
#include "aspc/generate.hpp"
#include "aspc/oracle.hpp"
#include "aspc/parse.hpp"
#include "aspc/synth.hpp"

namespace aspc {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    Program source;
    Program normalized;
    Analysis an;
};

inline Loaded load(const std::string& path) {
    Loaded l;
    l.source = parse_program(read_file(path));
    l.normalized = normalize_heads(l.source);
    l.an = analyze(l.normalized);
    return l;
}

inline const char* class_name(ProgramClass::Kind k) {
    switch (k) {
        case ProgramClass::Kind::Hierarchical: return "hierarchical";
        case ProgramClass::Kind::TightChoice: return "tight-choice";
        case ProgramClass::Kind::Rejected: return "rejected";
    }
    return "?";
}

inline void print_rejections(const Analysis& an, std::ostream& s) {
    for (const auto& r : an.cls.reasons) s << "reject: " << r << "\n";
}

inline std::string model_line(const std::vector<std::string>& atoms) {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += atoms[i];
    }
    return out + "}";
}

// "check_max(7)" -> ("check_max", {"7"})
inline std::pair<std::string, std::vector<std::string>> parse_invocation(
    const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos) return {text, {}};
    if (text.back() != ')')
        throw std::runtime_error("malformed invocation: " + text);
    std::pair<std::string, std::vector<std::string>> out;
    out.first = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    std::string cur;
    for (char c : args) {
        if (c == ',') {
            out.second.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty() || !out.second.empty()) out.second.push_back(cur);
    return out;
}

} // namespace cli_detail

inline int cli_run(const std::vector<std::string>& argv, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"finite-domain answer set programs to imperative code"};
    app.require_subcommand(1);

    std::string file, query_text, invoke_text, out_path, style = "plain",
                                                         mode = "choice";
    bool json = false, trace = false, include_domain = false;
    std::size_t max_models = 0;
    DiffConfig cfg;

    auto* c_check = app.add_subcommand("check", "classify a program");
    c_check->add_option("file", file)->required();

    auto* c_dual = app.add_subcommand("dual", "print the dual rules");
    c_dual->add_option("file", file)->required();
    c_dual->add_flag("--json", json);

    auto* c_solve = app.add_subcommand("solve", "oracle answer sets");
    c_solve->add_option("file", file)->required();
    c_solve->add_option("--mode", mode)
        ->check(CLI::IsMember({"subset", "choice"}));
    c_solve->add_option("--max-models", max_models);
    c_solve->add_flag("--include-domain-facts", include_domain);

    auto* c_query = app.add_subcommand("query", "goal-directed query");
    c_query->add_option("file", file)->required();
    c_query->add_option("-q,--query", query_text)->required();
    c_query->add_flag("--trace", trace);

    auto* c_synth = app.add_subcommand("synth", "emit imperative code");
    c_synth->add_option("file", file)->required();
    c_synth->add_option("-o,--output", out_path);
    c_synth->add_option("--style", style)
        ->check(CLI::IsMember({"plain", "paper"}));

    auto* c_run = app.add_subcommand("run", "interpret one invocation");
    c_run->add_option("file", file)->required();
    c_run->add_option("--invoke", invoke_text)->required();

    auto* c_models = app.add_subcommand("models", "synthesized model set");
    c_models->add_option("file", file)->required();

    auto* c_diff = app.add_subcommand("difftest", "differential harness");
    c_diff->add_option("--seed", cfg.seed);
    c_diff->add_option("--cases", cfg.cases);
    c_diff->add_flag("--json", json);

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (c_check->parsed()) {
            const auto l = cli_detail::load(file);
            out << "class: " << cli_detail::class_name(l.an.cls.kind) << "\n";
            cli_detail::print_rejections(l.an, out);
            return l.an.cls.rejected() ? 2 : 0;
        }

        if (c_dual->parsed()) {
            const auto l = cli_detail::load(file);
            const CompletionProgram cp = dualize(l.normalized, l.an.domains);
            if (!json) {
                out << render(cp);
                return 0;
            }
            nlohmann::json j;
            j["duals"] = nlohmann::json::array();
            for (const auto& grp : cp.groups) {
                nlohmann::json g;
                g["pred"] = grp.pred;
                g["head"] = render(grp.not_rule.head);
                auto clauses = nlohmann::json::array();
                auto foralls = nlohmann::json::array();
                clauses.push_back(render(grp.not_rule));
                for (const auto& cs : grp.rule_neg)
                    for (const auto& c : cs) {
                        clauses.push_back(render(c));
                        for (const auto& b : c.body)
                            if (b.kind == CLiteral::Kind::Forall)
                                foralls.push_back(render(b));
                    }
                for (const auto& cs : grp.forall_body)
                    for (const auto& c : cs) clauses.push_back(render(c));
                g["clauses"] = std::move(clauses);
                g["foralls"] = std::move(foralls);
                j["duals"].push_back(std::move(g));
            }
            out << j.dump(2) << "\n";
            return 0;
        }

        if (c_solve->parsed()) {
            const auto l = cli_detail::load(file);
            const GroundProgram g = ground(l.normalized, l.an);
            const auto interps =
                answer_sets(g,
                            mode == "subset" ? OracleMode::Subset
                                             : OracleMode::Choice,
                            l.an.graph);
            std::vector<std::string> lines;
            for (const auto& i : interps)
                lines.push_back(cli_detail::model_line(
                    interp_atoms(g, i, include_domain)));
            std::sort(lines.begin(), lines.end());
            if (max_models && lines.size() > max_models)
                lines.resize(max_models);
            for (const auto& ln : lines) out << ln << "\n";
            return 0;
        }

        if (c_query->parsed()) {
            const auto l = cli_detail::load(file);
            if (l.an.cls.rejected()) {
                cli_detail::print_rejections(l.an, err);
                return 2;
            }
            const CompletionProgram cp = dualize(l.normalized, l.an.domains);
            Evaluator ev(cp, l.an);
            const Literal q = parse_query(query_text);
            for (const auto& ans : ev.query(q)) {
                std::string line;
                for (const auto& [v, val] : ans.substitution)
                    line += v + "=" + val + " ";
                if (!line.empty()) line += " ";
                out << line << "model: "
                    << render(ans.model, l.an.domains) << "\n";
            }
            if (trace)
                for (const auto& t : ev.trace())
                    out << std::string(
                               static_cast<std::size_t>(t.depth) * 2, ' ')
                        << t.goal << " -> " << t.outcome << "\n";
            return 0;
        }

        if (c_synth->parsed() || c_run->parsed() || c_models->parsed()) {
            const auto l = cli_detail::load(file);
            if (l.an.cls.rejected()) {
                cli_detail::print_rejections(l.an, err);
                return 2;
            }
            const ImpProgram ip = synthesize(l.source);
            if (c_synth->parsed()) {
                const std::string text = emit_text(
                    ip, style == "paper" ? EmitStyle::Paper
                                         : EmitStyle::Plain);
                if (out_path.empty()) {
                    out << text;
                } else {
                    std::ofstream f(out_path, std::ios::binary);
                    if (!f)
                        throw std::runtime_error("cannot write file: " +
                                                 out_path);
                    f << text;
                }
                return 0;
            }
            if (c_run->parsed()) {
                const auto [proc, args] =
                    cli_detail::parse_invocation(invoke_text);
                out << (run_proc(ip, proc, args) ? "true" : "false") << "\n";
                return 0;
            }
            std::vector<std::string> lines;
            for (const auto& m : enumerate_models(ip))
                lines.push_back(cli_detail::model_line(
                    std::vector<std::string>(m.begin(), m.end())));
            std::sort(lines.begin(), lines.end());
            for (const auto& ln : lines) out << ln << "\n";
            return 0;
        }

        if (c_diff->parsed()) {
            const DiffReport rep = difftest(cfg);
            if (json) {
                nlohmann::json j;
                j["cases"] = rep.cases;
                j["agree"] = rep.agree;
                j["disagree"] = rep.disagree;
                j["skipped"] = rep.skipped;
                j["details"] = nlohmann::json::array();
                for (const auto& d : rep.details)
                    j["details"].push_back({{"index", d.index},
                                            {"seed", d.seed},
                                            {"class", d.cls},
                                            {"outcome", d.outcome}});
                if (rep.first_disagreement) {
                    const auto& d = *rep.first_disagreement;
                    j["first_disagreement"] = {
                        {"index", d.index},
                        {"seed", d.seed},
                        {"program", d.program},
                        {"synth_models", d.synth_models},
                        {"oracle_models", d.oracle_models}};
                } else {
                    j["first_disagreement"] = nullptr;
                }
                out << j.dump(2) << "\n";
            } else {
                out << "cases: " << rep.cases << "\n"
                    << "agree: " << rep.agree << "\n"
                    << "disagree: " << rep.disagree << "\n"
                    << "skipped: " << rep.skipped << "\n";
                if (rep.first_disagreement) {
                    const auto& d = *rep.first_disagreement;
                    out << "first disagreement: case " << d.index << ", seed "
                        << d.seed << "\n"
                        << d.program;
                    out << "synthesized models:\n";
                    for (const auto& m : d.synth_models)
                        out << "  " << m << "\n";
                    out << "oracle models:\n";
                    for (const auto& m : d.oracle_models)
                        out << "  " << m << "\n";
                }
            }
            return rep.disagree == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n" << app.help();
    return 1;
}

} // namespace aspc

#endif // ASPC_CLI_HPP
