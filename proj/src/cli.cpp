#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include <mbzeta/cli.hpp>
#include <mbzeta/contour.hpp>
#include <mbzeta/report_io.hpp>
#include <mbzeta/residues.hpp>
#include <mbzeta/specfun.hpp>
#include <mbzeta/verify.hpp>
#include <mbzeta/zeta.hpp>

namespace mbzeta::cli
{

using json = nlohmann::ordered_json;

namespace
{

constexpr const char *config_env = "MBZETA_CONFIG";

[[noreturn]] void usage(const std::string &what)
{
    throw Error(ErrorKind::UsageError, what);
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fmt(Complex z)
{
    return fmt(z.real()) + "," + fmt(z.imag());
}

Complex complex_flag(const std::string &text, const std::string &flag)
{
    try {
        return parse_complex(text);
    } catch (const Error &) {
        usage("--" + flag + ": \"" + text + "\" is not of the form re,im");
    }
}

IntegrandFamily make_family(const Command &cmd)
{
    const auto tag = parse_family(cmd.family);
    if (!tag) {
        usage("--family: unknown family \"" + cmd.family + "\" (expected gammapower, zetazeta or zetagammapower)");
    }
    IntegrandFamily f;
    switch (*tag) {
    case FamilyTag::GammaPower:
        f = IntegrandFamily::gamma_power(cmd.s, cmd.u);
        break;
    case FamilyTag::ZetaZetaGamma:
        f = IntegrandFamily::zeta_zeta_gamma(cmd.s);
        break;
    case FamilyTag::ZetaGammaPower:
        f = IntegrandFamily::zeta_gamma_power(cmd.s, cmd.a);
        break;
    }
    return f;
}

// Runs `check` and turns a DomainViolation into a usage diagnostic.
template <class F> void as_usage(F &&check)
{
    try {
        check();
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::DomainViolation) {
            usage(e.detail());
        }
        throw;
    }
}

RectangleSpec make_rect(const Command &cmd)
{
    return RectangleSpec{cmd.right, cmd.right - cmd.left, cmd.T};
}

OutputFormat parse_format(const std::string &name)
{
    if (name == "text") {
        return OutputFormat::Text;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    usage("--format: expected json, csv or text, got \"" + name + "\"");
}

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    // Extra top-level fields for JSON output.
    json meta = json::object();
};

std::string cell(const json &v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        return fmt(v.get<double>());
    }
    return v.dump();
}

std::string render(const Table &t, OutputFormat format)
{
    std::ostringstream os;
    switch (format) {
    case OutputFormat::Json: {
        json doc = t.meta;
        json rows = json::array();
        for (const auto &r : t.rows) {
            json row = json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i) {
                row[t.columns[i]] = r[i];
            }
            rows.push_back(std::move(row));
        }
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
        break;
    }
    case OutputFormat::Csv:
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << "\n";
        for (const auto &r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "," : "") << cell(r[i]);
            }
            os << "\n";
        }
        break;
    case OutputFormat::Text:
        for (const auto &[k, v] : t.meta.items()) {
            os << k << " = " << cell(v) << "\n";
        }
        for (const auto &r : t.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << (i ? "  " : "") << t.columns[i] << "=" << cell(r[i]);
            }
            os << "\n";
        }
        break;
    }
    return os.str();
}

void emit(const Command &cmd, const std::string &text, std::ostream &out)
{
    if (!cmd.output) {
        out << text;
        return;
    }
    std::ofstream file(*cmd.output);
    if (!file) {
        throw Error(ErrorKind::ConfigError, "cannot write \"" + *cmd.output + "\"");
    }
    file << text;
}

int run_eval(const Command &cmd, std::ostream &out)
{
    Complex value{};
    double err = 0.0;
    json meta = {{"function", cmd.function}};
    const auto nominal = [](Complex v, double rel) { return rel * std::max(1.0, std::abs(v)); };
    const auto &f = cmd.function;
    if (f == "gamma") {
        value = gamma(cmd.s);
        err = nominal(value, 1e-13);
    } else if (f == "lgamma") {
        value = log_gamma(cmd.s);
        err = nominal(value, 1e-14);
    } else if (f == "zeta") {
        value = riemann_zeta(cmd.s);
        err = nominal(value, 1e-12);
    } else if (f == "hurwitz") {
        value = hurwitz_zeta(cmd.s, cmd.a);
        err = nominal(value, 1e-12);
    } else if (f == "beta") {
        value = beta(cmd.s, cmd.w);
        err = nominal(value, 1e-13);
    } else if (f == "bernoulli" || f == "zeta_neg") {
        const Rational q = f == "bernoulli" ? Rational(bernoulli(cmd.n)) : zeta_negative_integer(cmd.n);
        value = to_double(q);
        meta["exact"] = q.str();
    } else if (f == "double_sum") {
        value = double_sum_oracle(cmd.s, cmd.tol);
        err = cmd.tol;
    } else if (f == "stirling") {
        value = stirling_main_term(cmd.s);
        // Distance to the exact log Gamma, i.e. the size of the dropped series.
        err = std::abs(log_gamma(cmd.s) - value);
    } else {
        usage("eval: unknown function \"" + f + "\"");
    }

    if (cmd.format == OutputFormat::Text) {
        std::ostringstream os;
        os.precision(17);
        os << value.real();
        if (value.imag() != 0.0) {
            os << (value.imag() < 0 ? " - " : " + ") << std::abs(value.imag()) << "i";
        }
        os << "  +- " << fmt(err) << "\n";
        if (meta.contains("exact")) {
            os << "exact = " << meta["exact"].get<std::string>() << "\n";
        }
        emit(cmd, os.str(), out);
        return exit_ok;
    }
    Table t;
    t.columns = {"function", "value_re", "value_im", "err_estimate"};
    t.rows.push_back({f, value.real(), value.imag(), err});
    t.meta = meta;
    emit(cmd, render(t, cmd.format), out);
    return exit_ok;
}

Table quadrature_table(const std::string &label, const QuadratureResult &r)
{
    Table t;
    t.columns = {"quantity", "value_re", "value_im", "err_estimate", "tail_bound", "evaluations"};
    t.rows.push_back({label, r.value.real(), r.value.imag(), r.err_estimate, r.tail_bound, r.evaluations});
    return t;
}

int run_integrate(const Command &cmd, std::ostream &out)
{
    const auto f = make_family(cmd);
    const auto r = integrate_vertical(f, VerticalLineSpec{cmd.c, cmd.tol});
    emit(cmd, render(quadrature_table("line_integral", r), cmd.format), out);
    return exit_ok;
}

int run_rect(const Command &cmd, std::ostream &out)
{
    const auto f = make_family(cmd);
    const auto rect = make_rect(cmd);
    const auto contour = integrate_rectangle(f, rect, cmd.tol);
    CompensatedSum sum;
    Table t;
    t.columns = {"quantity", "position", "value_re", "value_im"};
    for (const auto &p : enumerate_poles(f, rect)) {
        const auto term = residue_at(f, p);
        sum += term.value;
        t.rows.push_back({std::string("residue:") + std::string(pole_kind_name(p.kind)), p.position,
                          term.value.real(), term.value.imag()});
    }
    const Complex residues = sum.value();
    const double diff = std::abs(contour.value - residues);
    const bool match = diff <= cmd.tol;
    t.meta = {{"contour_re", contour.value.real()},   {"contour_im", contour.value.imag()},
              {"residue_sum_re", residues.real()},    {"residue_sum_im", residues.imag()},
              {"difference", diff},                   {"err_estimate", contour.err_estimate},
              {"tolerance", cmd.tol},                 {"match", match}};
    emit(cmd, render(t, cmd.format), out);
    return match ? exit_ok : exit_failure;
}

int run_residues(const Command &cmd, std::ostream &out)
{
    const auto f = make_family(cmd);
    const auto rect = make_rect(cmd);
    Table t;
    t.columns = {"position", "kind", "value_re", "value_im"};
    if (cmd.numerical) {
        t.columns.insert(t.columns.end(), {"numerical_re", "numerical_im", "abs_diff"});
    }
    for (const auto &p : enumerate_poles(f, rect)) {
        const auto term = residue_at(f, p);
        std::vector<json> row = {p.position, std::string(pole_kind_name(p.kind)), term.value.real(),
                                 term.value.imag()};
        if (cmd.numerical) {
            const auto num = numerical_residue(f, p.point());
            row.insert(row.end(), {num.value.real(), num.value.imag(), std::abs(num.value - term.value)});
        }
        t.rows.push_back(std::move(row));
    }
    emit(cmd, render(t, cmd.format), out);
    return exit_ok;
}

int run_tail(const Command &cmd, std::ostream &out)
{
    const auto study = asymptotic_tail_terms(cmd.s, cmd.M);
    Table t;
    t.columns = {"m", "term_re", "term_im", "abs"};
    for (std::size_t m = 0; m < study.terms.size(); ++m) {
        const auto z = study.terms[m];
        t.rows.push_back({m, z.real(), z.imag(), std::abs(z)});
    }
    t.meta = {{"min_index", study.min_index}, {"growth_onset", study.growth_onset}};
    emit(cmd, render(t, cmd.format), out);
    return exit_ok;
}

int run_verify(const Command &cmd, std::ostream &out)
{
    SuiteConfig config = cmd.config == "default" ? default_suite_config() : load_suite_config(cmd.config);
    if (cmd.jobs != 1) {
        config.jobs = cmd.jobs;
    }
    const auto report = run_suite(config);
    std::string text;
    switch (cmd.format) {
    case OutputFormat::Json:
        text = report_to_json(report).dump(2) + "\n";
        break;
    case OutputFormat::Csv:
        text = report_to_csv(report);
        break;
    case OutputFormat::Text:
        text = report_to_text(report);
        break;
    }
    emit(cmd, text, out);
    return report.overall_pass ? exit_ok : exit_failure;
}

} // namespace

Command parse_args(const std::vector<std::string> &args)
{
    Command cmd;
    CLI::App app{"Mellin-Barnes and zeta verification toolkit", "mbzeta"};
    app.require_subcommand(1);

    std::string s_text, w_text, format_text, output;
    std::string config_text;

    auto add_format = [&](CLI::App *sub) {
        sub->add_option("--format", format_text, "json, csv or text");
        sub->add_option("--output", output, "Write the result to this file");
    };
    auto add_family = [&](CLI::App *sub) {
        sub->add_option("--family", cmd.family, "gammapower, zetazeta or zetagammapower")->required();
        sub->add_option("--s", s_text, "Parameter s as re,im")->required();
        sub->add_option("--u", cmd.u, "Power base u (gammapower)");
        sub->add_option("--a", cmd.a, "Hurwitz shift a (zetagammapower)");
        sub->add_option("--tol", cmd.tol, "Absolute tolerance");
    };

    auto *eval = app.add_subcommand("eval", "Evaluate a special function");
    eval->add_option("function", cmd.function, "gamma, lgamma, zeta, hurwitz, beta, bernoulli, zeta_neg, "
                                                "double_sum or stirling")
        ->required();
    eval->add_option("--s", s_text, "Argument as re,im");
    eval->add_option("--w", w_text, "Second Beta argument as re,im");
    eval->add_option("--a", cmd.a, "Hurwitz shift");
    eval->add_option("--n", cmd.n, "Index for bernoulli and zeta_neg");
    eval->add_option("--tol", cmd.tol, "Tolerance for double_sum");
    add_format(eval);

    auto *integrate = app.add_subcommand("integrate", "Vertical-line Mellin-Barnes integral");
    add_family(integrate);
    integrate->add_option("--c", cmd.c, "Abscissa of the line")->required();
    add_format(integrate);

    auto *rect = app.add_subcommand("rect", "Rectangle contour against its residue sum");
    auto *residues = app.add_subcommand("residues", "Closed-form residues inside a rectangle");
    for (auto *sub : {rect, residues}) {
        add_family(sub);
        sub->add_option("--right", cmd.right, "Right edge")->required();
        sub->add_option("--left", cmd.left, "Left edge")->required();
        sub->add_option("--T", cmd.T, "Half height")->required();
        add_format(sub);
    }
    rect->get_option("--tol")->default_str("1e-6");
    residues->add_flag("--numerical", cmd.numerical, "Compare with small-circle integrals");

    auto *tail = app.add_subcommand("tail", "Terms of the asymptotic residue series");
    tail->add_option("--s", s_text, "Parameter s as re,im")->required();
    tail->add_option("--M", cmd.M, "Largest term index");
    add_format(tail);

    auto *verify = app.add_subcommand("verify", "Run the verification suite");
    verify->add_option("--config", config_text, "\"default\" or a JSON configuration file");
    verify->add_option("--jobs", cmd.jobs, "Concurrent cases");
    add_format(verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        usage(app.help());
    } catch (const CLI::CallForAllHelp &) {
        usage(app.help());
    } catch (const CLI::ParseError &e) {
        usage(e.what());
    }

    cmd.subcommand = app.get_subcommands().front()->get_name();
    if (cmd.subcommand == "rect" && rect->get_option("--tol")->count() == 0) {
        cmd.tol = 1e-6;
    }
    if (!s_text.empty()) {
        cmd.s = complex_flag(s_text, "s");
    }
    if (!w_text.empty()) {
        cmd.w = complex_flag(w_text, "w");
    }
    for (auto [name, v] : {std::pair{"u", cmd.u}, {"a", cmd.a}, {"c", cmd.c}, {"right", cmd.right},
                           {"left", cmd.left}, {"T", cmd.T}, {"tol", cmd.tol}}) {
        if (!std::isfinite(v)) {
            usage(std::string("--") + name + " must be finite");
        }
    }
    if (!(cmd.tol > 0.0)) {
        usage("--tol must be positive");
    }
    if (!output.empty()) {
        cmd.output = output;
    }

    cmd.format = cmd.subcommand == "verify" ? OutputFormat::Json : OutputFormat::Text;
    if (!format_text.empty()) {
        cmd.format = parse_format(format_text);
    }

    if (cmd.subcommand == "eval") {
        static const std::vector<std::string> known = {"gamma", "lgamma",     "zeta",    "hurwitz", "beta",
                                                       "bernoulli", "zeta_neg", "double_sum", "stirling"};
        if (std::find(known.begin(), known.end(), cmd.function) == known.end()) {
            usage("eval: unknown function \"" + cmd.function + "\"");
        }
        const bool indexed = cmd.function == "bernoulli" || cmd.function == "zeta_neg";
        if (!indexed && s_text.empty()) {
            usage("--s is required for eval " + cmd.function);
        }
        if (cmd.function == "beta" && w_text.empty()) {
            usage("--w is required for eval beta");
        }
    }
    if (cmd.subcommand == "integrate") {
        const auto f = make_family(cmd);
        as_usage([&] {
            f.validate();
            validate_line(f, VerticalLineSpec{cmd.c, cmd.tol});
        });
    }
    if (cmd.subcommand == "rect" || cmd.subcommand == "residues") {
        const auto f = make_family(cmd);
        as_usage([&] {
            f.validate();
            make_rect(cmd).validate();
        });
    }
    if (cmd.subcommand == "tail" && cmd.M > max_tail_terms) {
        usage("--M must be at most " + std::to_string(max_tail_terms));
    }
    if (cmd.subcommand == "verify") {
        if (!config_text.empty()) {
            cmd.config = config_text;
        } else if (const char *env = std::getenv(config_env); env && *env) {
            cmd.config = env;
        }
    }
    return cmd;
}

int execute(const Command &cmd, std::ostream &out, std::ostream &err)
{
    try {
        if (cmd.subcommand == "eval") {
            return run_eval(cmd, out);
        }
        if (cmd.subcommand == "integrate") {
            return run_integrate(cmd, out);
        }
        if (cmd.subcommand == "rect") {
            return run_rect(cmd, out);
        }
        if (cmd.subcommand == "residues") {
            return run_residues(cmd, out);
        }
        if (cmd.subcommand == "tail") {
            return run_tail(cmd, out);
        }
        if (cmd.subcommand == "verify") {
            return run_verify(cmd, out);
        }
        usage("unknown subcommand \"" + cmd.subcommand + "\"");
    } catch (const Error &e) {
        err << "error: " << e.what();
        if (cmd.subcommand != "verify") {
            err << " [s=" << fmt(cmd.s);
            if (cmd.subcommand != "eval" && cmd.subcommand != "tail") {
                err << " family=" << cmd.family;
            }
            err << "]";
        }
        err << "\n";
        switch (e.kind()) {
        case ErrorKind::UsageError:
        case ErrorKind::ConfigError:
        case ErrorKind::UnknownCaseKind:
            return exit_usage;
        default:
            return exit_failure;
        }
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    Command cmd;
    try {
        cmd = parse_args(args);
    } catch (const Error &e) {
        err << "usage error: " << e.detail() << "\n";
        return exit_usage;
    }
    return execute(cmd, out, err);
}

} // namespace mbzeta::cli
