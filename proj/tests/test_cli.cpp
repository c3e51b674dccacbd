// End-to-end checks of the latsum command line tool.  Each case shells out to
// the real binary, captures stdout, and inspects the exit status plus either
// the raw text or the parsed JSON.  stderr is discarded so usage errors keep
// the captured stream clean.

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LATSUM_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

nlohmann::json parse_json(const RunResult& r) {
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("characters subcommand lists the modulus 5 group") {
    RunResult table = run_cli("characters --modulus 5 --format table");
    CHECK(table.status == 0);
    CHECK(table.out.find("L_{5}") != std::string::npos);
    CHECK(table.out.find("L_{-5}^{i}") != std::string::npos);
    CHECK(table.out.find("L_{-5}^{-i}") != std::string::npos);

    RunResult js = run_cli("characters --modulus 5 --format json");
    CHECK(js.status == 0);
    auto j = parse_json(js);
    CHECK(j.at("modulus") == 5);
    REQUIRE(j.at("characters").is_array());
    CHECK(j.at("characters").size() == 4);
    bool saw_imag = false;
    for (const auto& row : j.at("characters")) {
        CHECK(row.contains("label"));
        CHECK(row.contains("parity"));
        CHECK(row.contains("conductor"));
        CHECK(row.contains("values"));
        if (row.at("label") == "L_{-5}^{i}") {
            saw_imag = true;
            CHECK(row.at("parity") == -1);
            CHECK(row.at("conductor") == 5);
            CHECK(row.at("primitive") == true);
        }
    }
    CHECK(saw_imag);
}

TEST_CASE("sum subcommand computes Q(1,0,1;2) both ways of spelling the form") {
    // split flags, table output
    RunResult t = run_cli("sum q --a 1 --b 0 --c 1 --s 2");
    CHECK(t.status == 0);
    CHECK(t.out.find("6.026812") != std::string::npos);

    // packed flag, json output
    RunResult js = run_cli("sum q --abc 1,0,1 --s 2 --format json");
    CHECK(js.status == 0);
    auto j = parse_json(js);
    CHECK(j.at("kind") == "q");
    double v = j.at("value").get<double>();
    CHECK(v == Catch::Approx(6.02681200096449).epsilon(1e-10));
    CHECK(j.at("error_kind") == "proven");
    // the proven tail bound at the stopping radius sits just under tol*|value|
    CHECK(j.at("error_estimate").get<double>() < 1e-7);
}

TEST_CASE("sum subcommand handles S, sigma, T and the mellin route") {
    RunResult s_shell = run_cli("sum s --prj 1,1,4 --s 2 --format json");
    REQUIRE(s_shell.status == 0);
    double shell = parse_json(s_shell).at("value").get<double>();

    RunResult s_mellin = run_cli("sum s --p 1 --r 1 --j 4 --s 2 --mellin --format json");
    REQUIRE(s_mellin.status == 0);
    double mellin = parse_json(s_mellin).at("value").get<double>();
    CHECK(mellin == Catch::Approx(shell).epsilon(1e-7));

    RunResult t13 = run_cli("sum t --r 13 --s 2 --format json");
    REQUIRE(t13.status == 0);
    CHECK(parse_json(t13).at("value").get<double>()
          == Catch::Approx(2.19663944351063).epsilon(1e-9));
}

TEST_CASE("verify subcommand reports passes, expected failures and exit codes") {
    RunResult ok = run_cli("verify --id table1.r7 --format json");
    CHECK(ok.status == 0);
    auto j = parse_json(ok);
    CHECK(j.at("unexpected_failures") == 0);
    REQUIRE(j.at("records").is_array());
    REQUIRE(j.at("records").size() >= 1);
    for (const auto& rec : j.at("records")) {
        CHECK(rec.at("pass") == true);
        CHECK(rec.at("rel_err").get<double>() <= 1e-10);
    }

    // a literal reading fails by design but does not fail the run
    RunResult lit = run_cli("verify --id 'eq4.6.S(1,1,3).literal' --format json");
    CHECK(lit.status == 0);
    auto jl = parse_json(lit);
    CHECK(jl.at("unexpected_failures") == 0);
    REQUIRE(jl.at("records").size() == 1);
    CHECK(jl.at("records")[0].at("pass") == false);
    CHECK(jl.at("records")[0].at("expected_fail") == true);

    // an impossible tolerance turns a pass into exit code 1 (kl-route id, so
    // the tolerance only tightens the comparison, not the computation)
    RunResult tight = run_cli("verify --id table1.r1 --tol 1e-30 --format json");
    CHECK(tight.status == 1);
}

TEST_CASE("verify output is byte-identical across job counts") {
    RunResult one = run_cli("verify --group lser --report json --jobs 1");
    RunResult three = run_cli("verify --group lser --report json --jobs 3");
    REQUIRE(one.status == 0);
    REQUIRE(three.status == 0);
    CHECK(one.out == three.out);
}

TEST_CASE("funceq, pole and table1 subcommands") {
    RunResult fe = run_cli("funceq --r 2 --s 0.3+0.2i --format json");
    CHECK(fe.status == 0);
    auto jf = parse_json(fe);
    CHECK(jf.at("pass") == true);
    CHECK(jf.at("rel_err").get<double>() <= 1e-8);

    RunResult po = run_cli("pole --r 1 --format json");
    CHECK(po.status == 0);
    auto jp = parse_json(po);
    CHECK(jp.at("laurent").at("c_minus2").get<double>() == Catch::Approx(2.0).margin(1e-6));
    double log2 = std::log(2.0);
    CHECK(jp.at("laurent").at("C_r").get<double>()
          == Catch::Approx(2.0 * log2 * log2).margin(1e-5));
    CHECK(jp.at("zero").at("value_at_0").get<double>() == Catch::Approx(1.0).margin(1e-9));

    RunResult tb = run_cli("table1 --format json");
    CHECK(tb.status == 0);
    auto jt = parse_json(tb);
    REQUIRE(jt.at("rows").is_array());
    CHECK(jt.at("rows").size() == 13);
    CHECK(jt.at("failures") == 0);
}

TEST_CASE("lseries subcommand evaluates labels and closed forms") {
    RunResult ev = run_cli("lseries --label L_{-4} --s 2 --format json");
    CHECK(ev.status == 0);
    auto j = parse_json(ev);
    CHECK(j.at("value").get<double>() == Catch::Approx(0.9159655941772190).epsilon(1e-12));

    RunResult sp = run_cli("lseries --label L_{-4} --special 3 --format json");
    CHECK(sp.status == 0);
    auto js = parse_json(sp);
    CHECK(js.at("closed_form") == "1/64 * sqrt(4) * pi^3");
    CHECK(js.at("abs_diff").get<double>() < 1e-11);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("characters").status == 2);             // missing --modulus
    CHECK(run_cli("characters --modulus 5 --bogus").status == 2);
    CHECK(run_cli("sum q --s 2").status == 2);            // no form given
    CHECK(run_cli("verify --id no.such.id").status == 2);
    CHECK(run_cli("lseries --label 'L_{5}^{i}' --s 2").status == 2);
}
