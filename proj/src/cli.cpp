#include "gravclock/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "gravclock/detectability.hpp"
#include "gravclock/errors.hpp"
#include "gravclock/geodesic_oracle.hpp"
#include "gravclock/interferometry.hpp"
#include "gravclock/propertime.hpp"
#include "gravclock/qep.hpp"
#include "gravclock/selftest.hpp"

#ifndef GRAVCLOCK_VERSION
#define GRAVCLOCK_VERSION "0.0.0"
#endif

namespace gravclock::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    if (!t.empty() && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (t.empty() || res.ec != std::errc() || res.ptr != last) {
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

std::string flag_name(const std::string& key) {
    std::string f = key;
    std::replace(f.begin(), f.end(), '_', '-');
    return "--" + f;
}

const std::vector<std::string>& constant_keys() {
    static const std::vector<std::string> keys{"c", "G", "hbar"};
    return keys;
}

// Layered settings: file values, then flags.
class Settings {
public:
    explicit Settings(ConfigMap m) : m_(std::move(m)) {}

    bool has(const std::string& key) const { return m_.count(key) != 0; }
    double num(const std::string& key, double fallback) const {
        const auto it = m_.find(key);
        return it == m_.end() ? fallback : parse_double(key, it->second);
    }
    std::string str(const std::string& key, const std::string& fallback) const {
        const auto it = m_.find(key);
        return it == m_.end() ? fallback : trim(it->second);
    }
    std::vector<double> nums(const std::string& key, const std::vector<double>& fallback) const {
        const auto it = m_.find(key);
        if (it == m_.end()) return fallback;
        std::vector<double> out;
        for (const auto& s : split_list(it->second)) out.push_back(parse_double(key, s));
        return out;
    }
    std::vector<std::string> strs(const std::string& key) const {
        const auto it = m_.find(key);
        return it == m_.end() ? std::vector<std::string>{} : split_list(it->second);
    }

private:
    ConfigMap m_;
};

PhysicalConstants apply_constants(PhysicalConstants k, const Settings& s) {
    k.c = s.num("c", k.c);
    k.G = s.num("G", k.G);
    k.hbar = s.num("hbar", k.hbar);
    k.validate();
    return k;
}

PhysicalConstants resolve_constants(const Settings& s) {
    PhysicalConstants k = PhysicalConstants::si();
    if (const char* path = std::getenv("GRAVCLOCK_CONSTANTS"); path && *path) {
        k = apply_constants(k, Settings(load_config_file(path, &constant_keys())));
    }
    return apply_constants(k, s);
}

Record constants_record(const PhysicalConstants& k) {
    return {{"c", k.c}, {"G", k.G}, {"hbar", k.hbar}};
}

RotatingMassModel resolve_model(const Settings& s, const PhysicalConstants& k) {
    RotatingMassModel m;
    m.constants = k;
    m.M = s.num("M", 0.0);
    m.J = s.num("J", 1.0);
    if (m.M < 0.0 || !std::isfinite(m.M)) throw DomainError("M must be non-negative");
    if (!std::isfinite(m.J)) throw DomainError("J must be finite");
    return m;
}

InterferometerGeometry resolve_geometry(const Settings& s) {
    InterferometerGeometry g;
    g.w = s.num("w", 1e-3);
    g.L = s.num("L", 1e3 * g.w);
    g.v0 = s.num("v0", 1.0);
    return g;
}

ClockModel resolve_clock(const Settings& s, const PhysicalConstants& k) {
    ClockModel c;
    c.E_g = s.num("E_g", 0.0);
    c.E_e = s.has("E_e") ? s.num("E_e", 0.0) : c.E_g + k.hbar * s.num("clock_rate", 1e15);
    c.validate();
    return c;
}

QepTestTheory resolve_qep(const Settings& s, const PhysicalConstants& k) {
    QepTestTheory tt;
    tt.newtonian = resolve_clock(s, k);
    tt.E_g_prime = s.num("E_g_prime", tt.newtonian.E_g);
    tt.E_e_prime = s.num("E_e_prime", tt.newtonian.E_e);
    tt.theta = s.num("theta", 0.0);
    tt.varphi = s.num("varphi", 0.0);
    const auto in = s.str("input", "ground");
    if (in == "ground") tt.input = NewtonianEigenstate::ground;
    else if (in == "excited") tt.input = NewtonianEigenstate::excited;
    else throw ConfigError("input must be 'ground' or 'excited'");
    tt.commutator_threshold = s.num("commutator_threshold", 0.1);
    tt.validate();
    return tt;
}

DeltaTauMode resolve_mode(const Settings& s) {
    const auto m = s.str("mode", "closed_form");
    if (m == "closed_form" || m == "closed-form") return DeltaTauMode::closed_form;
    if (m == "quadrature") return DeltaTauMode::quadrature;
    throw ConfigError("mode must be 'closed_form' or 'quadrature'");
}

EntropyBase resolve_base(const Settings& s) {
    const auto b = s.str("base", "bits");
    if (b == "bits" || b == "2") return EntropyBase::bits;
    if (b == "nats" || b == "e") return EntropyBase::nats;
    throw ConfigError("base must be 'bits' or 'nats'");
}

// Delta tau either given directly or derived from the source and geometry.
struct ResolvedDeltaTau {
    PhaseBundle bundle;
    Record inputs;
};

ResolvedDeltaTau resolve_delta_tau(const Settings& s, const PhysicalConstants& k) {
    ResolvedDeltaTau r;
    if (s.has("delta_tau")) {
        const double d = s.num("delta_tau", 0.0);
        if (!std::isfinite(d)) throw DomainError("delta_tau must be finite");
        r.bundle.delta_tau = d;
        r.bundle.sign = (d > 0) - (d < 0);
        r.bundle.log10_delta_tau = d == 0.0 ? -INFINITY : std::log10(std::abs(d));
        r.inputs = {{"delta_tau", d}};
        return r;
    }
    const auto model = resolve_model(s, k);
    const auto geom = resolve_geometry(s);
    const auto mode = resolve_mode(s);
    r.bundle = delta_tau_interferometer(model, geom, mode);
    r.inputs = {{"M", model.M}, {"J", model.J}, {"w", geom.w}, {"L", geom.L}, {"v0", geom.v0},
                {"mode", std::string(mode == DeltaTauMode::closed_form ? "closed_form" : "quadrature")}};
    return r;
}

void append(Record& a, const Record& b) { a.insert(a.end(), b.begin(), b.end()); }

Output cmd_delta_tau(const Settings& s, const PhysicalConstants& k) {
    Output o;
    const auto model = resolve_model(s, k);
    const auto geom = resolve_geometry(s);
    const auto mode = resolve_mode(s);
    const auto clock = resolve_clock(s, k);
    auto b = delta_tau_interferometer(model, geom, mode);
    b = with_phases(b, clock.mean(), clock.gap(), k);
    o.inputs = {{"M", model.M}, {"J", model.J}, {"w", geom.w}, {"L", geom.L}, {"v0", geom.v0},
                {"E_g", clock.E_g}, {"E_e", clock.E_e},
                {"mode", std::string(mode == DeltaTauMode::closed_form ? "closed_form" : "quadrature")}};
    o.outputs = {{"delta_tau", b.delta_tau},
                 {"delta_tau_log10", b.log10_delta_tau},
                 {"sign", static_cast<long long>(b.sign)},
                 {"phase_mean", b.phase_mean},
                 {"phase_mean_log10", b.log10_phase_mean},
                 {"phase_gap", b.phase_gap},
                 {"phase_gap_log10", b.log10_phase_gap},
                 {"quadrature_intervals", static_cast<long long>(b.quadrature_intervals)}};
    return o;
}

Output cmd_interfere(const Settings& s, const PhysicalConstants& k) {
    Output o;
    const auto dt = resolve_delta_tau(s, k);
    const auto clock = resolve_clock(s, k);
    const auto b = with_phases(dt.bundle, clock.mean(), clock.gap(), k);
    const ClockPhases ph{b.phase_mean, b.phase_gap};
    const auto r = detection_probabilities(ph);
    const auto st = probabilities_from_state(interference_state(relative_evolution(ph), initial_clock_state()));
    o.inputs = dt.inputs;
    append(o.inputs, {{"E_g", clock.E_g}, {"E_e", clock.E_e}});
    o.outputs = {{"delta_tau", b.delta_tau},
                 {"phase_mean", b.phase_mean},
                 {"phase_mean_log10", b.log10_phase_mean},
                 {"phase_gap", b.phase_gap},
                 {"phase_gap_log10", b.log10_phase_gap},
                 {"visibility", r.visibility},
                 {"visibility_deficit", visibility(ph, VisibilityMode::deficit)},
                 {"pr_left", r.pr_left},
                 {"pr_right", r.pr_right},
                 {"pr_left_oracle", st.pr_left}};
    return o;
}

Output cmd_gme(const Settings& s, const PhysicalConstants& k) {
    Output o;
    const auto dt = resolve_delta_tau(s, k);
    const auto clock = resolve_clock(s, k);
    const auto base = resolve_base(s);
    const auto b = with_phases(dt.bundle, clock.mean(), clock.gap(), k);
    const auto g = gme_entanglement(ClockPhases{b.phase_mean, b.phase_gap}, base);
    o.inputs = dt.inputs;
    append(o.inputs, {{"E_g", clock.E_g}, {"E_e", clock.E_e},
                      {"base", std::string(base == EntropyBase::bits ? "bits" : "nats")}});
    o.outputs = {{"delta_tau", b.delta_tau},
                 {"phase_mean", b.phase_mean},
                 {"phase_gap", b.phase_gap},
                 {"ee_spc", g.ee_spc},
                 {"ef_sp", g.ef_sp},
                 {"witness", g.witness},
                 {"ee_spc_oracle", g.ee_spc_oracle},
                 {"ef_sp_oracle", g.ef_sp_oracle}};
    return o;
}

Output cmd_qep(const Settings& s, const PhysicalConstants& k) {
    Output o;
    const auto dt = resolve_delta_tau(s, k);
    const auto tt = resolve_qep(s, k);
    const auto base = resolve_base(s);
    const auto r = qep_gme_entanglement(tt, dt.bundle.delta_tau, k, base);
    o.inputs = dt.inputs;
    append(o.inputs, {{"E_g", tt.newtonian.E_g},
                      {"E_e", tt.newtonian.E_e},
                      {"E_g_prime", tt.E_g_prime},
                      {"E_e_prime", tt.E_e_prime},
                      {"theta", tt.theta},
                      {"varphi", tt.varphi},
                      {"input", std::string(tt.input == NewtonianEigenstate::ground ? "ground" : "excited")},
                      {"base", std::string(base == EntropyBase::bits ? "bits" : "nats")}});
    o.outputs = {{"delta_tau", dt.bundle.delta_tau},
                 {"visibility", r.visibility},
                 {"xi_phase", r.xi_phase},
                 {"xi", r.xi},
                 {"pr_left", r.pr_left},
                 {"pr_right", r.pr_right},
                 {"ee_spc", r.ee_spc},
                 {"ef_sp", r.ef_sp},
                 {"witness", r.witness},
                 {"commutator_ratio", r.commutator_ratio},
                 {"commutator_warning", r.commutator_warning},
                 {"pr_left_oracle", r.pr_left_oracle},
                 {"ee_spc_oracle", r.ee_spc_oracle},
                 {"ef_sp_oracle", r.ef_sp_oracle}};
    return o;
}

Output cmd_detect(const Settings& s, const PhysicalConstants& k) {
    Output o;
    DetectabilityQuery q;
    q.clock_rate = s.num("clock_rate", 1e15);
    q.w = s.num("w", 1e-3);
    q.v0 = s.num("v0", 0.0);
    q.ell_log10 = s.num("ell_log10", 0.0);
    const double target = s.num("target_phase", 1.0);
    const double phase = phase_shift_estimate(q, k);
    const double ell = required_ell(target, q.clock_rate, q.w, q.v0, k);
    o.inputs = {{"clock_rate", q.clock_rate}, {"w", q.w}, {"v0", q.v0},
                {"ell_log10", q.ell_log10}, {"target_phase", target}};
    o.outputs = {{"phase_log10", phase},
                 {"phase_per_ell_log10", phase - q.ell_log10},
                 {"required_ell_log10", ell}};
    return o;
}

Output cmd_sweep(const Settings& s, const PhysicalConstants& k) {
    Output o;
    SweepConfig cfg;
    cfg.axis = s.str("axis", "w");
    cfg.values = s.nums("values", {});
    cfg.outputs = s.strs("outputs");
    cfg.workers = static_cast<unsigned>(s.num("workers", 0.0));
    cfg.fixed.model = resolve_model(s, k);
    cfg.fixed.geometry = resolve_geometry(s);
    cfg.fixed.clock = resolve_clock(s, k);
    cfg.fixed.qep = resolve_qep(s, k);
    cfg.fixed.target_phase = s.num("target_phase", 1.0);
    if (cfg.values.empty()) throw ConfigError("sweep needs at least one value");
    const auto table = run_sweep(cfg);
    std::vector<std::string> vals;
    for (double v : cfg.values) vals.push_back(format_number(v));
    o.inputs = {{"axis", cfg.axis}, {"values", vals}, {"outputs", cfg.outputs}};
    o.columns = table.columns;
    for (const auto& row : table.rows) {
        std::vector<Value> r;
        for (double v : row) r.emplace_back(v);
        o.rows.push_back(std::move(r));
    }
    return o;
}

Output cmd_verify(const Settings& s) {
    // Exaggerated geometric units unless constants are given explicitly.
    const PhysicalConstants k = apply_constants(PhysicalConstants::geometric(), s);
    RotatingMassModel model;
    model.constants = k;
    model.M = s.num("M", 0.01);
    model.J = s.num("J", 0.1);
    const double x0 = s.num("start_x", 10.0);
    const double y0 = s.num("start_y", -20.0);
    const double x1 = s.num("end_x", 10.0);
    const double y1 = s.num("end_y", 20.0);
    const double duration = s.num("duration", 800.0);
    BoundaryConditions bc;
    bc.start = {0.0, std::hypot(x0, y0), std::numbers::pi / 2.0, std::atan2(y0, x0)};
    bc.end = {duration, std::hypot(x1, y1), std::numbers::pi / 2.0, std::atan2(y1, x1)};
    RelaxationOptions opts;
    const double seg = s.num("segments", 1024.0);
    if (!(seg >= 2.0)) throw DomainError("segments must be at least 2");
    opts.segments = static_cast<std::size_t>(seg);
    const double sweeps = s.num("max_sweeps", static_cast<double>(opts.max_sweeps));
    if (!(sweeps >= 1.0)) throw DomainError("max_sweeps must be at least 1");
    opts.max_sweeps = static_cast<int>(std::min(sweeps, 1e9));
    const auto eps = s.nums("eps", {0.01, 0.0316227766016838, 0.1, 0.316227766016838, 1.0});
    const auto report = verify_first_order(model, bc, eps, opts);

    Output o;
    o.inputs = {{"M", model.M}, {"J", model.J}, {"start_x", x0}, {"start_y", y0}, {"end_x", x1},
                {"end_y", y1}, {"duration", duration}, {"segments", static_cast<long long>(opts.segments)}};
    o.columns = {"epsilon", "exact", "first_order", "residual", "slope", "background_proper_time"};
    for (const auto& row : report.rows) {
        o.rows.push_back({row.epsilon, row.exact, row.first_order, row.residual, report.slope,
                          report.background_proper_time});
    }
    return o;
}

Output cmd_selftest(const Settings& s, bool& all_passed) {
    const auto seed = static_cast<std::uint64_t>(s.num("seed", 12345.0));
    const auto results = run_selftest(seed);
    Output o;
    o.inputs = {{"seed", static_cast<long long>(seed)}};
    o.columns = {"suite", "max_error", "tolerance", "passed"};
    all_passed = true;
    for (const auto& r : results) {
        o.rows.push_back({r.name, r.max_error, r.tolerance, r.passed});
        all_passed = all_passed && r.passed;
    }
    return o;
}

std::string value_text(const Value& v) {
    struct Visitor {
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
        std::string operator()(const std::vector<std::string>& x) const {
            std::string out;
            for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + x[i];
            return out;
        }
    };
    return std::visit(Visitor{}, v);
}

std::string value_json(const Value& v) {
    struct Visitor {
        std::string operator()(double x) const { return std::isfinite(x) ? format_number(x) : "null"; }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return json_string(x); }
        std::string operator()(const std::vector<std::string>& x) const {
            std::string out = "[";
            for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + json_string(x[i]);
            return out + "]";
        }
    };
    return std::visit(Visitor{}, v);
}

void write_record_json(std::ostream& os, const Record& r) {
    os << '{';
    for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "," : "") << json_string(r[i].first) << ':' << value_json(r[i].second);
    }
    os << '}';
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "c",         "G",         "hbar",     "M",          "J",          "w",
        "L",         "v0",        "E_g",      "E_e",        "clock_rate", "E_g_prime",
        "E_e_prime", "theta",     "varphi",   "input",      "commutator_threshold",
        "delta_tau", "mode",      "base",     "ell_log10",  "target_phase",
        "axis",      "values",    "outputs",  "workers",    "segments",   "eps",
        "start_x",   "start_y",   "end_x",    "end_y",      "duration",   "seed",
        "max_sweeps",
        "format",    "output"};
    return keys;
}

ConfigMap parse_config(std::istream& in, const std::string& source,
                       const std::vector<std::string>* allowed) {
    ConfigMap m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (allowed && std::find(allowed->begin(), allowed->end(), key) == allowed->end()) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
        if (!m.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
    }
    return m;
}

ConfigMap load_config_file(const std::string& path, const std::vector<std::string>* allowed) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path, allowed);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (unsigned char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (ch < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += static_cast<char>(ch);
                }
        }
    }
    return out + '"';
}

void write_csv(std::ostream& os, const Output& o) {
    auto emit = [&os](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
        os << "\r\n";
    };
    if (!o.columns.empty()) {
        emit(o.columns);
        for (const auto& row : o.rows) {
            std::vector<std::string> f;
            for (const auto& v : row) f.push_back(value_text(v));
            emit(f);
        }
        return;
    }
    std::vector<std::string> header;
    std::vector<std::string> row;
    for (const auto* rec : {&o.inputs, &o.outputs}) {
        for (const auto& [k, v] : *rec) {
            // an input echoed as an output (delta_tau given directly) appears once
            if (std::find(header.begin(), header.end(), k) != header.end()) continue;
            header.push_back(k);
            row.push_back(value_text(v));
        }
    }
    emit(header);
    emit(row);
}

void write_json(std::ostream& os, const Output& o, const Record& constants) {
    os << "{\"inputs\":";
    write_record_json(os, o.inputs);
    os << ",\"outputs\":";
    if (!o.columns.empty()) {
        os << "{\"columns\":[";
        for (std::size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << json_string(o.columns[i]);
        os << "],\"rows\":[";
        for (std::size_t r = 0; r < o.rows.size(); ++r) {
            os << (r ? "," : "") << '[';
            for (std::size_t i = 0; i < o.rows[r].size(); ++i) os << (i ? "," : "") << value_json(o.rows[r][i]);
            os << ']';
        }
        os << "]}";
    } else {
        write_record_json(os, o.outputs);
    }
    os << ",\"meta\":{\"version\":" << json_string(GRAVCLOCK_VERSION) << ",\"constants\":";
    write_record_json(os, constants);
    os << "}}\n";
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frame-dragging proper-time and quantum-clock interferometry calculator", "gravclock"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", GRAVCLOCK_VERSION);

    struct Sub {
        const char* name;
        const char* help;
    };
    const std::vector<Sub> subs{
        {"delta-tau", "proper-time difference between the interferometer arms"},
        {"interfere", "visibility and detection probabilities"},
        {"gme", "source/path/clock entanglement and witness"},
        {"qep", "quantum equivalence principle test theory"},
        {"detect", "log-domain phase estimate and required angular momentum"},
        {"sweep", "parameter sweep over one axis"},
        {"verify", "first-order proper-time residual study on relaxed extremal paths"},
        {"selftest", "closed forms against state-vector oracles"}};

    std::map<std::string, std::string> flag_values;
    std::string config_path;
    for (const auto& sub : subs) {
        auto* sc = app.add_subcommand(sub.name, sub.help);
        sc->add_option("--config", config_path, "key = value file");
        for (const auto& key : config_keys()) {
            sc->add_option(flag_name(key), flag_values[key], key);
        }
    }

    std::vector<std::string> reversed_args(args.rbegin(), args.rend());
    try {
        app.parse(reversed_args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    const auto* sc = app.get_subcommands().front();
    try {
        ConfigMap merged;
        if (!config_path.empty()) merged = load_config_file(config_path, &config_keys());
        for (const auto& key : config_keys()) {
            if (sc->count(flag_name(key)) > 0) merged[key] = flag_values[key];
        }
        const Settings s(merged);
        const auto format = s.str("format", "csv");
        if (format != "csv" && format != "json") throw ConfigError("format must be 'csv' or 'json'");

        PhysicalConstants k = resolve_constants(s);
        bool passed = true;
        Output o;
        if (cmd == "delta-tau") o = cmd_delta_tau(s, k);
        else if (cmd == "interfere") o = cmd_interfere(s, k);
        else if (cmd == "gme") o = cmd_gme(s, k);
        else if (cmd == "qep") o = cmd_qep(s, k);
        else if (cmd == "detect") o = cmd_detect(s, k);
        else if (cmd == "sweep") o = cmd_sweep(s, k);
        else if (cmd == "verify") {
            k = apply_constants(PhysicalConstants::geometric(), s);
            o = cmd_verify(s);
        } else if (cmd == "selftest") {
            k = PhysicalConstants::geometric();
            o = cmd_selftest(s, passed);
        }

        std::ofstream file;
        std::ostream* dest = &out;
        if (s.has("output")) {
            file.open(s.str("output", ""));
            if (!file) throw ConfigError("cannot open output file '" + s.str("output", "") + "'");
            dest = &file;
        }
        if (format == "json") write_json(*dest, o, constants_record(k));
        else write_csv(*dest, o);
        return passed ? exit_ok : exit_failed;
    } catch (const NoConvergence& e) {
        err << "gravclock: " << e.what() << '\n';
        return exit_no_convergence;
    } catch (const Error& e) {
        err << "gravclock: " << e.what() << '\n';
        return exit_validation;
    }
}

}  // namespace gravclock::cli
