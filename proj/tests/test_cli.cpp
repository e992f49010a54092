#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "aspc/cli.hpp"
#include "helpers.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    CliResult r;
    r.code = aspc::cli_run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string corpus(const std::string& name) { return th::corpus_path(name); }

} // namespace

TEST_CASE("check classifies and sets the exit code") {
    auto r = cli({"check", corpus("max.lp")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "class: hierarchical\n");

    r = cli({"check", corpus("even_loop.lp")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "class: tight-choice\n");

    r = cli({"check", corpus("coloring_constraints.lp")});
    REQUIRE(r.code == 2);
    REQUIRE(r.out.find("class: rejected\n") != std::string::npos);
    REQUIRE(r.out.find("reject: head-less rule at line 6") !=
            std::string::npos);
}

TEST_CASE("dual prints the completion in the input grammar") {
    const auto r = cli({"dual", corpus("max.lp")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("__not_max(X) :- __nr1_max(X).") != std::string::npos);
    REQUIRE(r.out.find("forall(Y, __nb1_smaller(X, Y))") !=
            std::string::npos);
}

TEST_CASE("dual --json is machine readable") {
    const auto r = cli({"dual", corpus("max.lp"), "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["duals"].is_array());
    bool found = false;
    for (const auto& d : j["duals"])
        if (d["pred"] == "smaller") {
            found = true;
            REQUIRE(d["head"] == "__not_smaller(X)");
            REQUIRE(d["foralls"].size() == 1);
        }
    REQUIRE(found);
}

TEST_CASE("solve prints sorted oracle models") {
    auto r = cli({"solve", corpus("max.lp")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "{max(7), smaller(3), smaller(5)}\n");

    r = cli({"solve", corpus("max.lp"), "--include-domain-facts"});
    REQUIRE(r.out.find("num(3)") != std::string::npos);

    r = cli({"solve", corpus("even_loop.lp"), "--mode", "subset"});
    REQUIRE(r.out == "{p}\n{q}\n");

    r = cli({"solve", corpus("even_loop.lp"), "--max-models", "1"});
    REQUIRE(r.out == "{p}\n");
}

TEST_CASE("query prints bindings with partial models") {
    auto r = cli({"query", corpus("max.lp"), "-q", "max(X)"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "X=7  model: {max(7), not smaller(7)}\n");

    r = cli({"query", corpus("max.lp"), "-q", "max(X)", "--trace"});
    REQUIRE(r.out.find("-> success") != std::string::npos);
    REQUIRE(r.out.find("-> failure") != std::string::npos);

    r = cli({"query", corpus("coloring_constraints.lp"), "-q", "color(X, C)"});
    REQUIRE(r.code == 2);
    REQUIRE(r.err.find("reject:") != std::string::npos);
}

TEST_CASE("synth writes emitted code to stdout or a file") {
    auto r = cli({"synth", corpus("max.lp"), "--style", "paper"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("def max(x):") != std::string::npos);

    r = cli({"synth", corpus("max.lp")});
    REQUIRE(r.out.find("proc check_max(x):") != std::string::npos);
    REQUIRE(r.out.find("table num: [3, 7, 5]") != std::string::npos);
}

TEST_CASE("run interprets a single invocation") {
    auto r = cli({"run", corpus("max.lp"), "--invoke", "check_max(7)"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "true\n");
    r = cli({"run", corpus("max.lp"), "--invoke", "check_max(5)"});
    REQUIRE(r.out == "false\n");
    r = cli({"run", corpus("max.lp"), "--invoke", "nonsense(1)"});
    REQUIRE(r.code == 1);
}

TEST_CASE("models enumerates the synthesized model set") {
    const auto r = cli({"models", corpus("even_loop.lp")});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "{p}\n{q}\n");
}

TEST_CASE("difftest reports agreement and supports json") {
    auto r = cli({"difftest", "--seed", "5", "--cases", "20"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("cases: 20") != std::string::npos);
    REQUIRE(r.out.find("disagree: 0") != std::string::npos);

    r = cli({"difftest", "--seed", "5", "--cases", "20", "--json"});
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["cases"] == 20);
    REQUIRE(j["disagree"] == 0);
    REQUIRE(j["details"].size() == 20);
}

TEST_CASE("usage faults exit with code 1") {
    REQUIRE(cli({}).code == 1);
    REQUIRE(cli({"frobnicate"}).code == 1);
    REQUIRE(cli({"check", "/no/such/file.lp"}).code == 1);
    REQUIRE(cli({"solve", corpus("max.lp"), "--mode", "bogus"}).code == 1);
    const auto r = cli({"check", corpus("max.lp"), "--help"});
    REQUIRE(r.code == 0);
}
