#include "frv/cli.hpp"

#include "frv/cpt.hpp"
#include "frv/dualmap.hpp"
#include "frv/error.hpp"
#include "frv/friedmann.hpp"
#include "frv/gammafun.hpp"
#include "frv/oscillate.hpp"
#include "frv/rvcore.hpp"
#include "frv/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

namespace frv::cli {

using json = nlohmann::ordered_json;

const std::vector<CommandSpec>& commands() {
    using K = ParamKind;
    static const std::vector<CommandSpec> specs = {
        {"cpt-table",
         "Tabulate F(Omega) for flat and open universes and mu(Omega) for flat",
         {{"k", K::Text, "flat", false, "curvature (flat|open); both F columns are always emitted"},
          {"omega-min", K::Real, "0.01", false, "smallest Omega"},
          {"omega-max", K::Real, "0.99", false, "largest Omega"},
          {"n", K::Integer, "99", false, "number of rows"}},
         "csv"},
        {"integrate",
         "Integrate the matter + Lambda Friedmann equation",
         {{"h0", K::Real, "1", false, "Hubble constant H0"},
          {"omega0", K::Real, "0.3", false, "matter density parameter today"},
          {"omegalambda0", K::Real, "0.7", false, "Lambda density parameter today"},
          {"k", K::Text, "", false, "curvature (flat|open|closed); inferred when omitted"},
          {"a-init", K::Real, "1e-6", false, "initial scale factor"},
          {"a-final", K::Real, "1e3", false, "final scale factor"},
          {"n", K::Integer, "4096", false, "output rows, log-uniform in t"}},
         "csv"},
        {"classify",
         "Classify a sampled positive function (CSV t,value) as RV/ER/OR/UNBOUNDED",
         {{"input", K::Text, "", true, "CSV file with header t,value"}},
         "json"},
        {"gamma",
         "Estimate the Gamma functional of mu",
         {{"mu", K::Text, "constant", false, "constant | log-decay | oscillating | CSV path"},
          {"c", K::Real, "0.22222222222222222", false, "constant level for builtin mu"},
          {"x-min", K::Real, "10", false, "first truncation point"},
          {"points", K::Integer, "13", false, "schedule length, x_k = x_min 2^k"}},
         "json"},
        {"oscillate",
         "Synthesize a(t) = t^alpha cos^2 u + t^beta sin^2 u with derivatives",
         {{"alpha", K::Real, "0.4", false, "lower exponent"},
          {"beta", K::Real, "0.8", false, "upper exponent"},
          {"phase", K::Text, "log", false, "log | linear:<omega> | constant:<u> | file:<csv>"},
          {"horizon", K::Real, "1e8", false, "largest t (grid starts at t = 1)"},
          {"points", K::Integer, "4096", false, "log-uniform grid points"}},
         "csv"},
        {"dual",
         "Dual-universe parameters for an equation-of-state constant w",
         {{"w", K::Real, "", true, "equation-of-state constant"}},
         "json"},
        {"reconstruct",
         "Rebuild a(t) from an Omega track (CSV t,value)",
         {{"input", K::Text, "", true, "CSV file with header t,value"},
          {"k", K::Text, "flat", false, "curvature (flat|open)"},
          {"a0", K::Real, "1", false, "scale factor at the first grid point"}},
         "csv"},
    };
    return specs;
}

const CommandSpec* find_command(std::string_view name) {
    for (const auto& c : commands())
        if (c.name == name) return &c;
    return nullptr;
}

std::string canonical_key(std::string_view key) {
    std::string out;
    for (char ch : key) {
        if (ch == '-' || ch == '_') continue;
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

namespace {

std::string json_scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw UsageError("parameter values must be scalars");
}

std::optional<double> parse_real(const std::string& text) {
    double x = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(x)) return std::nullopt;
    return x;
}

std::optional<long long> parse_integer(const std::string& text) {
    long long x = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
    return x;
}

} // namespace

RunConfig parse_config_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object()) throw UsageError("config parse error: top level must be an object");
    RunConfig rc;
    for (const auto& [key, value] : doc.items()) {
        const std::string ck = canonical_key(key);
        if (ck == "command") {
            if (!value.is_string()) throw UsageError("config: command must be a string");
            rc.command = value.get<std::string>();
        } else if (ck == "parameters") {
            if (!value.is_object()) throw UsageError("config: parameters must be an object");
            for (const auto& [pk, pv] : value.items()) rc.parameters[canonical_key(pk)] = json_scalar_text(pv);
        } else if (ck == "outputpath") {
            if (!value.is_string()) throw UsageError("config: output_path must be a string");
            rc.output_path = value.get<std::string>();
        } else if (ck == "format") {
            if (!value.is_string()) throw UsageError("config: format must be a string");
            rc.format = value.get<std::string>();
        } else {
            rc.parameters[ck] = json_scalar_text(value);
        }
    }
    return rc;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

void validate(RunConfig& config) {
    std::vector<std::string> problems;
    const CommandSpec* spec = nullptr;
    if (config.command.empty()) {
        problems.push_back("missing command");
    } else if (!(spec = find_command(config.command))) {
        problems.push_back("unknown command '" + config.command + "'");
    }
    if (!config.format.empty() && config.format != "csv" && config.format != "json")
        problems.push_back("format must be csv or json");
    if (config.output_path.empty()) problems.push_back("output_path must not be empty");
    if (spec) {
        for (const auto& [key, value] : config.parameters) {
            const bool known = std::any_of(spec->params.begin(), spec->params.end(),
                                           [&](const ParamSpec& p) { return canonical_key(p.flag) == key; });
            if (!known) problems.push_back("unknown parameter '" + key + "' for " + spec->name);
        }
        for (const auto& p : spec->params) {
            const std::string key = canonical_key(p.flag);
            auto it = config.parameters.find(key);
            if (it == config.parameters.end()) {
                if (p.required) problems.push_back("missing required parameter '" + p.flag + "'");
                else if (!p.default_value.empty()) config.parameters[key] = p.default_value;
                continue;
            }
            if (p.kind == ParamKind::Real && !parse_real(it->second))
                problems.push_back("parameter '" + p.flag + "' is not a finite real: '" + it->second + "'");
            if (p.kind == ParamKind::Integer && !parse_integer(it->second))
                problems.push_back("parameter '" + p.flag + "' is not an integer: '" + it->second + "'");
        }
        if (config.format.empty()) config.format = spec->default_format;
    }
    if (!problems.empty()) {
        std::string msg = "invalid configuration: ";
        for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
        throw UsageError(msg);
    }
}

namespace {

class Params {
public:
    explicit Params(const RunConfig& rc) : rc_(rc) {}

    bool has(std::string_view flag) const { return rc_.parameters.count(canonical_key(flag)) > 0; }
    std::string text(std::string_view flag) const { return rc_.parameters.at(canonical_key(flag)); }
    double real(std::string_view flag) const { return *parse_real(text(flag)); }
    std::size_t count(std::string_view flag) const {
        const long long v = *parse_integer(text(flag));
        if (v < 0) fail(ErrorCode::InvalidArgument, std::string(flag) + " must be non-negative");
        return static_cast<std::size_t>(v);
    }

private:
    const RunConfig& rc_;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit(std::ostream& out, const Table& table, const std::string& format) {
    if (format == "json") {
        json doc;
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        out << doc.dump(2) << '\n';
        return;
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

void emit(std::ostream& out, const json& doc, const std::string& format) {
    if (format == "json") {
        out << doc.dump(2) << '\n';
        return;
    }
    out << "key,value\n";
    for (const auto& [key, value] : doc.items()) {
        out << key << ',';
        if (value.is_number_float()) out << format_double(value.get<double>());
        else if (value.is_string()) out << value.get<std::string>();
        else out << value.dump();
        out << '\n';
    }
}

SampledFunction read_sampled(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    return read_sampled_csv(in);
}

Series read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    return read_series_csv(in);
}

void cmd_cpt_table(const Params& p, std::ostream& out, const std::string& format) {
    const Curvature k = parse_curvature(p.text("k"));
    if (k == Curvature::Closed) fail(ErrorCode::DomainError, "F(Omega) is not defined for k = +1");
    const double lo = p.real("omega-min"), hi = p.real("omega-max");
    const std::size_t n = p.count("n");
    Table t{{"omega", "F_flat", "F_open", "mu_flat"}, {}};
    const auto grid = n == 1 ? std::vector<double>{lo} : linear_grid(lo, hi, n);
    for (double omega : grid)
        t.rows.push_back({omega, f_omega(omega, Curvature::Flat), f_omega(omega, Curvature::Open),
                          mu_of_omega(omega, Curvature::Flat)});
    emit(out, t, format);
}

void cmd_integrate(const Params& p, std::ostream& out, const std::string& format) {
    std::optional<Curvature> k;
    if (p.has("k")) k = parse_curvature(p.text("k"));
    const auto cfg = CosmologyConfig::make(p.real("h0"), p.real("omega0"), p.real("omegalambda0"), k);
    const Trajectory traj = integrate(cfg, p.real("a-init"), p.real("a-final"), p.count("n"));
    if (format == "csv") {
        write_csv(out, traj);
        return;
    }
    Table t{{"t", "a", "a_dot", "H", "Omega", "OmegaLambda", "OmegaK", "q"}, {}};
    for (const auto& r : traj.rows)
        t.rows.push_back({r.t, r.a, r.a_dot, r.H, r.Omega, r.OmegaLambda, r.OmegaK, r.q});
    emit(out, t, format);
}

void cmd_classify(const Params& p, std::ostream& out, const std::string& format) {
    const SampledFunction f = read_sampled(p.text("input"));
    const RvClassification c = classify(f);
    json doc;
    doc["kind"] = std::string(to_string(c.kind));
    doc["index"] = c.index ? json(*c.index) : json(nullptr);
    doc["index_interval"] =
        c.index_interval ? json::array({c.index_interval->first, c.index_interval->second}) : json(nullptr);
    doc["max_spread"] = c.max_spread;
    emit(out, doc, format);
}

void cmd_gamma(const Params& p, std::ostream& out, const std::string& format) {
    const std::string mu = p.text("mu");
    const double c = p.real("c");
    const std::size_t points = p.count("points");
    const double x_min = p.real("x-min");
    std::vector<double> schedule(points);
    for (std::size_t k = 0; k < points; ++k) schedule[k] = x_min * std::ldexp(1.0, static_cast<int>(k));
    GammaResult r;
    if (mu == "constant") {
        r = m_functional([c](double) { return c; }, schedule);
    } else if (mu == "log-decay") {
        r = m_functional([](double t) { const double l = std::log(t); return 1.0 / (l * l); }, schedule);
    } else if (mu == "oscillating") {
        r = m_functional([c](double t) { return c + std::sin(t) / t; }, schedule);
    } else {
        r = m_functional(read_series(mu), schedule);
    }
    json doc;
    doc["gamma"] = r.gamma;
    doc["converged"] = r.converged;
    doc["extrapolated"] = r.extrapolated;
    doc["regime"] = std::string(to_string(r.regime));
    doc["roots"] = r.roots ? json::array({r.roots->first, r.roots->second}) : json(nullptr);
    doc["schedule"] = r.schedule;
    doc["diagnostics"] = r.diagnostics;
    emit(out, doc, format);
}

Phase parse_phase(const std::string& spec) {
    if (spec == "log") return log_phase();
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "linear" || kind == "constant") {
        const auto v = parse_real(arg);
        if (!v) fail(ErrorCode::InvalidArgument, "phase '" + spec + "': expected a number after ':'");
        return kind == "linear" ? linear_phase(*v) : constant_phase(*v);
    }
    if (kind == "file" && !arg.empty()) return spline_phase(read_series(arg));
    fail(ErrorCode::InvalidArgument, "unknown phase '" + spec + "'");
}

void cmd_oscillate(const Params& p, std::ostream& out, const std::string& format) {
    OscillationModel model;
    model.alpha = p.real("alpha");
    model.beta = p.real("beta");
    model.phase = parse_phase(p.text("phase"));
    const std::vector<double> grid = log_grid(1.0, p.real("horizon"), p.count("points"));
    const SampledFunction a = synth_a(model, grid);
    const OscDerivatives d = synth_derivatives(model, grid);
    Table t{{"t", "a", "a_dot", "a_ddot", "q"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double ad = d.a_dot.value(i), add = d.a_ddot.value(i);
        t.rows.push_back({grid[i], a.value(i), ad, add, -add * a.value(i) / (ad * ad)});
    }
    emit(out, t, format);
}

void cmd_dual(const Params& p, std::ostream& out, const std::string& format) {
    const double w = p.real("w");
    json doc;
    if (w == -1.0) {
        // Only the defining relation survives at w = -1.
        doc["w_alpha"] = w;
        doc["w_beta"] = dual_w(w);
        doc["gamma"] = nullptr;
        doc["alpha"] = nullptr;
        doc["beta"] = nullptr;
        doc["dual_hubble_coeff"] = nullptr;
    } else {
        const DualPair d = dual_params(w);
        doc["w_alpha"] = d.w_alpha;
        doc["w_beta"] = d.w_beta;
        doc["gamma"] = d.gamma;
        doc["alpha"] = d.alpha;
        doc["beta"] = d.beta;
        doc["dual_hubble_coeff"] = d.dual_hubble_coeff;
    }
    emit(out, doc, format);
}

void cmd_reconstruct(const Params& p, std::ostream& out, const std::string& format) {
    const SampledFunction omega = read_sampled(p.text("input"));
    const SampledFunction a = reconstruct_a(omega, parse_curvature(p.text("k")), omega.front_t(), p.real("a0"));
    if (format == "csv") {
        write_csv(out, a);
        return;
    }
    Table t{{"t", "value"}, {}};
    for (std::size_t i = 0; i < a.size(); ++i) t.rows.push_back({a.t(i), a.value(i)});
    emit(out, t, format);
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    // Reserved for stochastic commands; every current command is deterministic.
    [[maybe_unused]] const char* seed = std::getenv("FRIEDMANN_RV_SEED");
    RunConfig rc = config;
    try {
        validate(rc);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    std::ostringstream buf;
    try {
        const Params p(rc);
        const std::string& c = rc.command;
        if (c == "cpt-table") cmd_cpt_table(p, buf, rc.format);
        else if (c == "integrate") cmd_integrate(p, buf, rc.format);
        else if (c == "classify") cmd_classify(p, buf, rc.format);
        else if (c == "gamma") cmd_gamma(p, buf, rc.format);
        else if (c == "oscillate") cmd_oscillate(p, buf, rc.format);
        else if (c == "dual") cmd_dual(p, buf, rc.format);
        else if (c == "reconstruct") cmd_reconstruct(p, buf, rc.format);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    if (rc.output_path == "-") {
        out << buf.str();
        out.flush();
        return 0;
    }
    std::ofstream file(rc.output_path, std::ios::binary);
    if (!file) {
        err << "error: cannot write '" << rc.output_path << "'\n";
        return 1;
    }
    file << buf.str();
    return file ? 0 : 1;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Regular-variation analysis of Friedmann cosmology"};
    app.name("frv");
    app.fallthrough();
    app.require_subcommand(0, 1);
    std::string config_path, output_path, format;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("-o,--output", output_path, "output file ('-' for standard output)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::map<std::string, std::map<std::string, std::string>> values;
    std::vector<std::pair<CLI::App*, const CommandSpec*>> subs;
    for (const auto& spec : commands()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        for (const auto& p : spec.params) {
            std::string help = p.help;
            if (!p.default_value.empty()) help += " [default: " + p.default_value + "]";
            sub->add_option("--" + p.flag, values[spec.name][p.flag], help);
        }
        subs.emplace_back(sub, &spec);
    }

    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    RunConfig rc;
    try {
        if (!config_path.empty()) rc = load_config(config_path);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    for (const auto& [sub, spec] : subs) {
        if (!sub->parsed()) continue;
        rc.command = spec->name;
        for (const auto& p : spec->params)
            if (sub->get_option("--" + p.flag)->count() > 0)
                rc.parameters[canonical_key(p.flag)] = values[spec->name][p.flag];
    }
    if (!output_path.empty()) rc.output_path = output_path;
    if (!format.empty()) rc.format = format;
    if (rc.command.empty()) {
        err << "usage error: missing command (use a subcommand or 'command' in --config)\n";
        return 2;
    }
    return run(rc, out, err);
}

} // namespace frv::cli
