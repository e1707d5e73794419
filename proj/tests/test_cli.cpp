#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out, err;
};

std::string data(const std::string& name) { return std::string(SETVAR_DATA_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = setvar::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);)
        if (l == line) return true;
    return false;
}

}  // namespace

TEST_CASE("reach on the growth scenario") {
    Result r = run({"reach", "--scenario", data("growth.vi"), "--x0", "1", "--N", "100"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "# command: reach"));
    CHECK(has_line(r.out, "reachable-decimal [1, 2.70481382942]"));
    CHECK(r.err.empty());
}

TEST_CASE("certify prints the constant costate or a refutation") {
    Result ok = run({"certify", "--scenario", data("certify.vi"), "--path", data("path_opt.vi")});
    CHECK(ok.code == 0);
    CHECK(has_line(ok.out, "p ≡ 1"));
    CHECK(has_line(ok.out, "verified yes"));
    Result no = run({"certify", "--scenario", data("certify.vi"), "--path", data("path_zero.vi")});
    CHECK(no.code == 1);
    CHECK(no.out.find("refutation") != std::string::npos);
}

TEST_CASE("chain reports the strict convexified inclusion") {
    Result r = run({"chain", "--g", data("G2.vi"), "--f", data("Fpm.vi"), "--point", "0", "0", "--kind", "convexified"});
    CHECK(r.code == 0);
    CHECK(has_line(r.out, "relation LHS ⊊ RHS"));
    CHECK(has_line(r.out, "relation RHS = RHS2"));
}

TEST_CASE("subdiff, pi, converge, coderiv and oracle-check") {
    Result s = run({"subdiff", "--scenario", data("band.vi"), "--x0", "0"});
    CHECK(s.code == 0);
    CHECK(has_line(s.out, "estimate {1}"));
    Result p = run({"pi", "--scenario", data("band.vi"), "--x0", "0", "--xN", "-1", "--dir", "1"});
    CHECK(p.code == 0);
    CHECK(has_line(p.out, "pi {1}"));
    Result c = run({"converge", "--scenario", data("growth.vi"), "--x0", "1", "--Ns", "10", "100"});
    CHECK(c.code == 0);
    CHECK(has_line(c.out, "10\t0.124539368359\texact"));
    CHECK(has_line(c.out, "strictly-decreasing yes"));
    Result d = run({"coderiv", "--map", data("tightness.vi") + ":F", "--point", "0", "0", "--dir", "1"});
    CHECK(d.code == 0);
    CHECK(has_line(d.out, "kind limiting"));
    Result o = run({"oracle-check", "--map", data("tightness.vi") + ":G2", "--point", "0", "0", "--kind", "limiting"});
    CHECK(o.code == 0);
    CHECK(has_line(o.out, "rate 1"));
}

TEST_CASE("errors exit with code 2") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{}, {"frob"}, {"reach", "--scenario", data("nope.vi"), "--x0", "0"},
          {"reach", "--scenario", data("growth.vi"), "--x0", "1", "--no-such-flag"},
          {"reach", "--scenario", data("growth.vi")},
          {"coderiv", "--map", data("tightness.vi") + ":Q", "--point", "0", "0", "--dir", "1"}}) {
        Result r = run(args);
        CHECK(r.code == 2);
        CHECK(r.err.rfind("error: ", 0) == 0);
    }
    Result missing = run({"reach", "--scenario", data("nope.vi"), "--x0", "0"});
    CHECK(missing.err.find("cannot open") != std::string::npos);
}

TEST_CASE("output is byte-for-byte deterministic") {
    std::vector<std::string> args = {"oracle-check", "--map", data("tightness.vi") + ":G2", "--point", "0", "0",
                                     "--samples", "200", "--seed", "5"};
    CHECK(run(args).out == run(args).out);
    std::vector<std::string> chain = {"chain", "--g", data("G2.vi"), "--f", data("Fpm.vi"), "--point", "0", "0"};
    CHECK(run(chain).out == run(chain).out);
}
