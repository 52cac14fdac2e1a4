#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <mbzeta/cli.hpp>
#include <mbzeta/report_io.hpp>

#include "schema.hpp"

using namespace mbzeta;
using doctest::Approx;
using nlohmann::json;

namespace
{

struct Outcome
{
    int code;
    std::string out;
    std::string err;
};

Outcome run_args(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_binary(const std::string &args)
{
    const std::string cmd = std::string(MBZETA_TOOL_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

std::filesystem::path temp_file(const std::string &name, const std::string &contents)
{
    const auto path = std::filesystem::temp_directory_path() / ("mbzeta_test_" + name);
    std::ofstream(path) << contents;
    return path;
}

ErrorKind config_error_kind(const std::string &text)
{
    try {
        parse_suite_config(json::parse(text));
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::UsageError;
}

} // namespace

TEST_CASE("parse_args")
{
    const auto eval = cli::parse_args({"eval", "zeta", "--s", "2,0"});
    CHECK(eval.subcommand == "eval");
    CHECK(eval.function == "zeta");
    CHECK(eval.s == Complex{2.0, 0.0});
    CHECK(eval.format == cli::OutputFormat::Text);

    const auto verify = cli::parse_args({"verify", "--config", "suite.json", "--format", "json"});
    CHECK(verify.subcommand == "verify");
    CHECK(verify.config == "suite.json");
    CHECK(verify.format == cli::OutputFormat::Json);
    CHECK(cli::parse_args({"verify"}).format == cli::OutputFormat::Json);

    try {
        cli::parse_args({"integrate", "--family", "zetazeta", "--s", "4,0", "--c", "0.5"});
        FAIL("expected UsageError");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::UsageError);
        CHECK(e.detail() == "c violates c > 1");
    }

    const std::vector<std::vector<std::string>> bad = {
        {},
        {"frobnicate"},
        {"eval", "zeta", "--s", "2;0"},
        {"eval", "zeta", "--s", "(2,0)"},
        {"eval", "zeta", "--s", "2+0i"},
        {"eval", "zeta"},
        {"eval", "digamma", "--s", "2"},
        {"eval", "zeta", "--s", "2", "--format", "xml"},
        {"eval", "beta", "--s", "2"},
        {"integrate", "--family", "gammapower", "--s", "3", "--c", "nan"},
        {"integrate", "--family", "gammapower", "--s", "3", "--c", "abc"},
        {"integrate", "--family", "zetafoo", "--s", "4", "--c", "1.5"},
        {"integrate", "--family", "gammapower", "--s", "3", "--c", "1.2", "--u", "2"},
        {"integrate", "--family", "gammapower", "--s", "3", "--c", "1.2", "--tol", "0"},
        {"rect", "--family", "zetazeta", "--s", "4", "--right", "1.5", "--left", "0.5"},
        {"rect", "--family", "zetazeta", "--s", "4", "--right", "1.5", "--left", "2", "--T", "3"},
        {"tail", "--s", "4", "--M", "31"},
        {"verify", "--bogus"},
    };
    for (const auto &args : bad) {
        std::string joined;
        for (const auto &a : args) {
            joined += a + " ";
        }
        CAPTURE(joined);
        CHECK_THROWS_AS(cli::parse_args(args), Error);
        CHECK(run_args(args).code == cli::exit_usage);
    }
}

TEST_CASE("eval output")
{
    const auto r = run_args({"eval", "zeta", "--s", "2,0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("1.6449340668", 0) == 0);
    const double v = std::stod(r.out);
    CHECK(v == Approx(1.6449340668).epsilon(1e-10));

    const auto j = run_args({"eval", "gamma", "--s", "5", "--format", "json"});
    CHECK(j.code == 0);
    const auto doc = json::parse(j.out);
    CHECK(doc["rows"][0]["value_re"].get<double>() == 24.0);
    CHECK(doc["rows"][0]["err_estimate"].get<double>() >= 0.0);

    const auto b = run_args({"eval", "bernoulli", "--n", "12"});
    CHECK(b.out.find("-691/2730") != std::string::npos);
    const auto zn = run_args({"eval", "zeta_neg", "--n", "3", "--format", "csv"});
    CHECK(zn.out.rfind("function,value_re,value_im,err_estimate\n", 0) == 0);

    for (const auto &f : {"lgamma", "hurwitz", "double_sum", "stirling"}) {
        CAPTURE(f);
        CHECK(run_args({"eval", f, "--s", "4,1", "--a", "2"}).code == 0);
    }
    CHECK(run_args({"eval", "beta", "--s", "2", "--w", "3"}).code == 0);

    // Numerical errors exit 1 and name the error.
    const auto pole = run_args({"eval", "gamma", "--s", "-2,0"});
    CHECK(pole.code == cli::exit_failure);
    CHECK(pole.err.find("PoleProximity") != std::string::npos);
    CHECK(run_args({"eval", "bernoulli", "--n", "70"}).code == cli::exit_failure);
}

TEST_CASE("integrate, rect, residues and tail")
{
    const auto line = run_args({"integrate", "--family", "zetazeta", "--s", "4,0", "--c", "1.5", "--format", "json"});
    CHECK(line.code == 0);
    const auto ldoc = json::parse(line.out);
    CHECK(ldoc["rows"][0]["value_re"].get<double>() == Approx(0.7184020171).epsilon(1e-8));
    CHECK(ldoc["rows"][0]["tail_bound"].get<double>() >= 0.0);

    const auto rect = run_args(
        {"rect", "--family", "zetazeta", "--s", "4,0", "--right", "1.5", "--left", "0.5", "--T", "10"});
    CHECK(rect.code == 0);
    CHECK(rect.out.find("contour_re = 2.4041138") != std::string::npos);
    CHECK(rect.out.find("residue_sum_re = 2.4041138") != std::string::npos);
    CHECK(rect.out.find("match = true") != std::string::npos);

    const auto mismatch = run_args({"rect", "--family", "zetazeta", "--s", "4,0", "--right", "1.5", "--left",
                                    "0.5", "--T", "10", "--tol", "1e-30"});
    CHECK(mismatch.code == cli::exit_failure);
    CHECK(mismatch.out.find("match = false") != std::string::npos);

    const auto res = run_args({"residues", "--family", "gammapower", "--s", "3", "--u", "0.5", "--right", "0.8",
                               "--left", "-3.5", "--T", "5", "--numerical", "--format", "csv"});
    CHECK(res.code == 0);
    CHECK(res.out.rfind("position,kind,value_re,value_im,numerical_re,numerical_im,abs_diff\n", 0) == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 5);

    const auto tail = run_args({"tail", "--s", "4", "--M", "20", "--format", "json"});
    CHECK(tail.code == 0);
    const auto tdoc = json::parse(tail.out);
    CHECK(tdoc["rows"].size() == 21);
    CHECK(tdoc["rows"][2]["abs"].get<double>() == Approx(1.3360112).epsilon(1e-7));
    CHECK(tdoc["growth_onset"].get<int>() <= 2);
}

TEST_CASE("report serialization")
{
    VerificationReport report;
    report.entries.push_back(make_entry("a,b", {1.0, 2.0}, {1.0, 2.0}, 1e-8));
    report.entries.push_back(make_entry("plain", {1.0, 0.0}, {2.0, 0.0}, 1e-8));
    report.overall_pass = false;
    report.environment["precision"] = "binary64";

    const auto doc = report_to_json(report);
    CHECK(report_schema_problem(doc).empty());
    CHECK(json::parse(doc.dump()) == doc);
    CHECK(doc["version"] == report_schema_version);

    const auto csv = report_to_csv(report);
    std::istringstream lines(csv);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(header == "id,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,pass");
    CHECK(first.rfind("\"a,b\",1,2,1,2,0,0,", 0) == 0);
    CHECK(second.substr(second.size() - 5) == "false");

    const auto text = report_to_text(report);
    CHECK(text.find("FAIL plain") != std::string::npos);
    CHECK(text.find("overall_pass=false") != std::string::npos);
}

TEST_CASE("configuration parsing")
{
    const auto def = parse_suite_config(json::object());
    CHECK(def.cases.size() == default_cases().size());

    const auto empty = parse_suite_config(json::parse(R"({"cases": []})"));
    CHECK(empty.cases.empty());

    const auto tol = parse_suite_config(json::parse(R"({"tolerances": {"mb_power": 1e-30}})"));
    for (const auto &c : tol.cases) {
        if (c.kind == CaseKind::MbPower) {
            CHECK(c.tolerance == 1e-30);
        }
    }

    const auto custom = parse_suite_config(json::parse(R"({
        "version": 1,
        "jobs": 2,
        "quadrature": {"pole_guard": 1e-7, "max_evaluations": 100000},
        "envelope_ranges": {"gamma_exp": {"grid": 10}},
        "cases": [
            {"kind": "mb_power", "s": [3, 1], "u": 0.7, "c": 1.2},
            {"id": "r", "kind": "rectangle", "family": "zetazeta", "s": "4,0", "right": 1.5, "left": 0.5, "T": 10,
             "tolerance": 1e-6},
            {"kind": "envelope", "bound": "gamma_exp"},
            {"kind": "decay_vertical_shift", "family": "gammapower", "s": 3, "u": 0.5, "c": 0.5,
             "shifts": [10, 20], "tolerance": 1e-3}
        ]})"));
    REQUIRE(custom.cases.size() == 4);
    CHECK(custom.jobs == 2);
    CHECK(custom.settings.quadrature.pole_guard == 1e-7);
    CHECK(custom.settings.quadrature.max_evaluations == 100000);
    CHECK(custom.cases[0].id == "mb_power/0");
    CHECK(custom.cases[0].s == Complex{3.0, 1.0});
    CHECK(custom.cases[1].id == "r");
    CHECK(custom.cases[1].family == FamilyTag::ZetaZetaGamma);
    CHECK(custom.cases[1].left == 0.5);
    CHECK(custom.cases[2].ranges.grid == 10);
    CHECK(custom.cases[3].sweep == std::vector<double>{10.0, 20.0});
    const auto report = run_suite(custom);
    CHECK(report.entries.size() == 5);
    CHECK(report.overall_pass);

    CHECK(config_error_kind(R"({"cases": [{"kind": "nonsense"}]})") == ErrorKind::UnknownCaseKind);
    CHECK(config_error_kind(R"({"tolerances": {"nonsense": 1}})") == ErrorKind::UnknownCaseKind);
    CHECK(config_error_kind(R"({"cases": [{"kind": "mb_power", "colour": 1}]})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"cases": [{"kind": "mb_power", "s": "x"}]})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"cases": [{"kind": "mb_power", "tolerance": -1}]})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"cases": {}})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"extra": 1})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"([1, 2])") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"quadrature": {"pole_guard": 0}})") == ErrorKind::ConfigError);
    CHECK(config_error_kind(R"({"envelope_ranges": {"zeta_mid": {}}})") == ErrorKind::ConfigError);

    CHECK(parse_complex("2,0") == Complex{2.0, 0.0});
    CHECK(parse_complex("-1.5,2e-3") == Complex{-1.5, 2e-3});
    CHECK(parse_complex("4") == Complex{4.0, 0.0});
    CHECK_THROWS_AS(parse_complex("1,2,3"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
    CHECK_THROWS_AS(parse_complex("inf,0"), Error);
}

TEST_CASE("verify through the library entry point")
{
    const auto path = temp_file("small.json", R"({"cases": [{"kind": "coth_expansion", "x": 1, "terms": 10,
                                                  "tolerance": 1e-10}]})");
    const auto r = run_args({"verify", "--config", path.string()});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(report_schema_problem(doc).empty());
    CHECK(doc["entries"].size() == 1);

    const auto out_path = std::filesystem::temp_directory_path() / "mbzeta_test_out.csv";
    std::filesystem::remove(out_path);
    CHECK(run_args({"verify", "--config", path.string(), "--format", "csv", "--output", out_path.string()}).code ==
          0);
    std::ifstream in(out_path);
    std::string header;
    std::getline(in, header);
    CHECK(header == csv_header);

    CHECK(run_args({"verify", "--config", "/nonexistent/suite.json"}).code == cli::exit_usage);
    const auto broken = temp_file("broken.json", "{not json");
    CHECK(run_args({"verify", "--config", broken.string()}).code == cli::exit_usage);
    const auto unknown = temp_file("unknown.json", R"({"cases": [{"kind": "nonsense"}]})");
    CHECK(run_args({"verify", "--config", unknown.string()}).code == cli::exit_usage);

    ::setenv("MBZETA_CONFIG", path.string().c_str(), 1);
    CHECK(cli::parse_args({"verify"}).config == path.string());
    CHECK(cli::parse_args({"verify", "--config", "default"}).config == "default");
    ::unsetenv("MBZETA_CONFIG");
    CHECK(cli::parse_args({"verify"}).config == "default");
}

TEST_CASE("binary exit codes")
{
    const auto ok = run_binary("eval zeta --s 2,0");
    CHECK(ok.code == 0);
    CHECK(ok.out.rfind("1.6449340668", 0) == 0);

    const auto impossible =
        temp_file("impossible.json",
                  R"({"tolerances": {"mb_power": 1e-30}, "cases": [{"kind": "mb_power", "s": [3, 0], "u": 0.5,
                      "c": 1.2}]})");
    const auto fail = run_binary("verify --config " + impossible.string());
    CHECK(fail.code == 1);
    const auto doc = json::parse(fail.out);
    CHECK(report_schema_problem(doc).empty());
    CHECK_FALSE(doc["overall_pass"].get<bool>());

    CHECK(run_binary("eval zeta --s").code == 2);
    CHECK(run_binary("integrate --family zetazeta --s 4,0 --c 0.5").code == 2);
    CHECK(run_binary("verify --format yaml").code == 2);
}
