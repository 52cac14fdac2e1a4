#include <fstream>
#include <set>
#include <sstream>

#include <mbzeta/report_io.hpp>

namespace mbzeta
{

using nlohmann::json;

namespace
{

std::string number(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

[[noreturn]] void config_error(const std::string &what)
{
    throw Error(ErrorKind::ConfigError, what);
}

double get_number(const json &j, const std::string &key)
{
    if (!j.is_number()) {
        config_error("\"" + key + "\" must be a number");
    }
    return j.get<double>();
}

Range get_range(const json &j, const std::string &key)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        config_error("\"" + key + "\" must be a two-element numeric array");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Complex get_complex(const json &j, const std::string &key)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_string()) {
        try {
            return parse_complex(j.get<std::string>());
        } catch (const Error &) {
            config_error("\"" + key + "\" is not a complex literal");
        }
    }
    config_error("\"" + key + "\" must be a number, [re, im] or \"re,im\"");
}

std::vector<double> get_numbers(const json &j, const std::string &key)
{
    if (!j.is_array()) {
        config_error("\"" + key + "\" must be an array");
    }
    std::vector<double> out;
    for (const auto &v : j) {
        out.push_back(get_number(v, key));
    }
    return out;
}

std::size_t get_count(const json &j, const std::string &key)
{
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        config_error("\"" + key + "\" must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

void apply_ranges(EnvelopeRanges &r, const json &j)
{
    if (!j.is_object()) {
        config_error("envelope ranges must be an object");
    }
    for (const auto &[key, value] : j.items()) {
        if (key == "sigma") {
            r.sigma = get_range(value, key);
        } else if (key == "fit") {
            r.fit = get_range(value, key);
        } else if (key == "test") {
            r.test = get_range(value, key);
        } else if (key == "delta") {
            r.delta = get_number(value, key);
        } else if (key == "grid") {
            r.grid = get_count(value, key);
        } else {
            config_error("unknown envelope range key \"" + key + "\"");
        }
    }
}

IdentityCase parse_case(const json &j, std::size_t index, const std::map<std::string, double> &tolerances,
                        const std::map<EnvelopeKind, EnvelopeRanges> &ranges)
{
    if (!j.is_object()) {
        config_error("case " + std::to_string(index) + " is not an object");
    }
    if (!j.contains("kind") || !j["kind"].is_string()) {
        config_error("case " + std::to_string(index) + " has no \"kind\"");
    }
    const auto kind_name = j["kind"].get<std::string>();
    const auto kind = parse_case_kind(kind_name);
    if (!kind) {
        throw Error(ErrorKind::UnknownCaseKind, "\"" + kind_name + "\" in case " + std::to_string(index));
    }

    IdentityCase c;
    c.kind = *kind;
    c.id = kind_name + "/" + std::to_string(index);
    if (auto it = tolerances.find(kind_name); it != tolerances.end()) {
        c.tolerance = it->second;
    }
    bool ranges_given = false;
    for (const auto &[key, value] : j.items()) {
        if (key == "kind") {
            continue;
        } else if (key == "id") {
            if (!value.is_string()) {
                config_error("\"id\" must be a string");
            }
            c.id = value.get<std::string>();
        } else if (key == "tolerance") {
            c.tolerance = get_number(value, key);
        } else if (key == "family") {
            const auto fam = value.is_string() ? parse_family(value.get<std::string>()) : std::nullopt;
            if (!fam) {
                config_error("unknown family in case " + std::to_string(index));
            }
            c.family = *fam;
        } else if (key == "s") {
            c.s = get_complex(value, key);
        } else if (key == "u") {
            c.u = get_number(value, key);
        } else if (key == "a") {
            c.a = get_number(value, key);
        } else if (key == "b") {
            c.b = get_number(value, key);
        } else if (key == "c" || key == "right") {
            c.c = get_number(value, key);
        } else if (key == "x") {
            c.x = get_number(value, key);
        } else if (key == "terms") {
            c.terms = get_count(value, key);
        } else if (key == "left") {
            c.left = get_number(value, key);
        } else if (key == "T") {
            c.T = get_number(value, key);
        } else if (key == "k") {
            c.k = get_number(value, key);
        } else if (key == "heights" || key == "shifts" || key == "sweep") {
            c.sweep = get_numbers(value, key);
        } else if (key == "bound") {
            const auto env = value.is_string() ? parse_envelope_kind(value.get<std::string>()) : std::nullopt;
            if (!env) {
                config_error("unknown envelope bound in case " + std::to_string(index));
            }
            c.envelope = *env;
        } else if (key == "ranges") {
            ranges_given = true;
        } else if (key == "M") {
            c.M = get_count(value, key);
        } else if (key == "expected") {
            c.expected = get_numbers(value, key);
        } else {
            config_error("unknown key \"" + key + "\" in case " + std::to_string(index));
        }
    }
    if (c.kind == CaseKind::Envelope) {
        const auto it = ranges.find(c.envelope);
        c.ranges = it != ranges.end() ? it->second : default_envelope_ranges(c.envelope);
        if (ranges_given) {
            apply_ranges(c.ranges, j["ranges"]);
        }
    }
    if (!(c.tolerance > 0.0)) {
        config_error("case \"" + c.id + "\" needs a positive tolerance");
    }
    return c;
}

} // namespace

Complex parse_complex(const std::string &text)
{
    const auto comma = text.find(',');
    auto parse_part = [&](const std::string &part) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != part.size() || !std::isfinite(v)) {
            throw Error(ErrorKind::UsageError, "\"" + text + "\" is not a complex literal of the form re,im");
        }
        return v;
    };
    if (comma == std::string::npos) {
        return {parse_part(text), 0.0};
    }
    return {parse_part(text.substr(0, comma)), parse_part(text.substr(comma + 1))};
}

json report_to_json(const VerificationReport &report)
{
    json entries = json::array();
    for (const auto &e : report.entries) {
        json row = {
            {"id", e.id},
            {"lhs_re", e.lhs.real()},
            {"lhs_im", e.lhs.imag()},
            {"rhs_re", e.rhs.real()},
            {"rhs_im", e.rhs.imag()},
            {"abs_err", e.abs_err},
            {"rel_err", e.rel_err},
            {"tolerance", e.tolerance},
            {"pass", e.pass},
        };
        if (!e.error.empty()) {
            row["error"] = e.error;
        }
        entries.push_back(std::move(row));
    }
    json env = json::object();
    for (const auto &[k, v] : report.environment) {
        env[k] = v;
    }
    return {
        {"version", report_schema_version},
        {"environment", env},
        {"entries", entries},
        {"overall_pass", report.overall_pass},
    };
}

std::string report_to_csv(const VerificationReport &report)
{
    std::ostringstream os;
    os << csv_header << "\n";
    for (const auto &e : report.entries) {
        // Ids are generated without commas or quotes; quote defensively for user ids.
        std::string id = e.id;
        if (id.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char ch : id) {
                quoted += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
            }
            id = quoted + "\"";
        }
        os << id << "," << number(e.lhs.real()) << "," << number(e.lhs.imag()) << "," << number(e.rhs.real()) << ","
           << number(e.rhs.imag()) << "," << number(e.abs_err) << "," << number(e.rel_err) << ","
           << number(e.tolerance) << "," << (e.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

std::string report_to_text(const VerificationReport &report)
{
    std::ostringstream os;
    os.precision(10);
    for (const auto &e : report.entries) {
        os << (e.pass ? "PASS " : "FAIL ") << e.id << "  lhs=" << e.lhs.real() << "," << e.lhs.imag()
           << "  rhs=" << e.rhs.real() << "," << e.rhs.imag() << "  abs_err=" << e.abs_err
           << "  rel_err=" << e.rel_err << "  tol=" << e.tolerance;
        if (!e.error.empty()) {
            os << "  error=" << e.error;
        }
        os << "\n";
    }
    os << "overall_pass=" << (report.overall_pass ? "true" : "false") << " (" << report.entries.size()
       << " entries)\n";
    return os.str();
}

SuiteConfig parse_suite_config(const json &doc)
{
    if (!doc.is_object()) {
        config_error("configuration must be a JSON object");
    }
    static const std::set<std::string> known = {"version", "tolerances", "cases", "envelope_ranges", "quadrature",
                                                 "jobs"};
    for (const auto &[key, value] : doc.items()) {
        if (!known.count(key)) {
            config_error("unknown top-level key \"" + key + "\"");
        }
    }

    SuiteConfig config;
    std::map<std::string, double> tolerances;
    if (doc.contains("tolerances")) {
        const auto &t = doc["tolerances"];
        if (!t.is_object()) {
            config_error("\"tolerances\" must be an object");
        }
        for (const auto &[key, value] : t.items()) {
            if (!parse_case_kind(key)) {
                throw Error(ErrorKind::UnknownCaseKind, "\"" + key + "\" in tolerances");
            }
            tolerances[key] = get_number(value, key);
        }
    }

    std::map<EnvelopeKind, EnvelopeRanges> ranges;
    if (doc.contains("envelope_ranges")) {
        const auto &r = doc["envelope_ranges"];
        if (!r.is_object()) {
            config_error("\"envelope_ranges\" must be an object");
        }
        for (const auto &[key, value] : r.items()) {
            const auto kind = parse_envelope_kind(key);
            if (!kind) {
                config_error("unknown envelope bound \"" + key + "\"");
            }
            EnvelopeRanges er = default_envelope_ranges(*kind);
            apply_ranges(er, value);
            ranges[*kind] = er;
        }
    }

    if (doc.contains("quadrature")) {
        const auto &q = doc["quadrature"];
        if (!q.is_object()) {
            config_error("\"quadrature\" must be an object");
        }
        for (const auto &[key, value] : q.items()) {
            if (key == "pole_guard") {
                config.settings.quadrature.pole_guard = get_number(value, key);
                if (!(config.settings.quadrature.pole_guard > 0.0)) {
                    config_error("pole_guard must be positive");
                }
            } else if (key == "max_evaluations") {
                config.settings.quadrature.max_evaluations = get_count(value, key);
            } else {
                config_error("unknown quadrature key \"" + key + "\"");
            }
        }
    }

    if (doc.contains("jobs")) {
        config.jobs = get_count(doc["jobs"], "jobs");
    }

    if (doc.contains("cases")) {
        const auto &cases = doc["cases"];
        if (!cases.is_array()) {
            config_error("\"cases\" must be an array");
        }
        for (std::size_t i = 0; i < cases.size(); ++i) {
            config.cases.push_back(parse_case(cases[i], i, tolerances, ranges));
        }
    } else {
        config.cases = default_cases();
        for (auto &c : config.cases) {
            if (auto it = tolerances.find(std::string(case_kind_name(c.kind))); it != tolerances.end()) {
                c.tolerance = it->second;
            }
            if (c.kind == CaseKind::Envelope) {
                if (auto it = ranges.find(c.envelope); it != ranges.end()) {
                    c.ranges = it->second;
                }
            }
        }
    }
    return config;
}

SuiteConfig load_suite_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open configuration file \"" + path + "\"");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        config_error("\"" + path + "\" is not valid JSON: " + e.what());
    }
    return parse_suite_config(doc);
}

} // namespace mbzeta
