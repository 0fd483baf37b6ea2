#include "ebsg/config.hpp"

#include "ebsg/format.hpp"
#include "ebsg/problems.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ebsg {

std::string_view to_string(ProblemKind kind) noexcept
{
    switch (kind) {
    case ProblemKind::pure_advection:
        return "pure-advection";
    case ProblemKind::gaussian_pulse:
        return "gaussian-pulse";
    case ProblemKind::custom:
        return "custom";
    }
    return "unknown";
}

namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "problem", "n", "h", "dt", "t_final", "p", "xi", "lambda", "x0", "snapshots", "quad_order",
    "a", "b", "u0", "exact", "f0", "fl",
};

const std::set<std::string, std::less<>> kCustomOnly{"a", "b", "u0", "exact", "f0", "fl"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ConfigError("config: key '" + std::string(key) + "' expects a number, got '"
                          + std::string(text) + "'");
    }
    return v;
}

int parse_integer(std::string_view key, std::string_view text)
{
    const double v = parse_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 2e9) {
        throw ConfigError("config: key '" + std::string(key) + "' expects an integer, got '"
                          + std::string(text) + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = trim(text.substr(0, comma));
        values.push_back(parse_number(key, item));
        if (comma == std::string_view::npos) {
            break;
        }
        text = text.substr(comma + 1);
        if (trim(text).empty()) {
            throw ConfigError("config: key '" + std::string(key) + "' has a trailing comma");
        }
    }
    return values;
}

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw ConfigError("config: " + what);
    }
}

void check_expression(const char* key, const std::string& text)
{
    try {
        (void)Expression::parse(text);
    } catch (const ExpressionError& e) {
        throw ConfigError(std::string("config: key '") + key + "': " + e.what());
    }
}

}  // namespace

RunConfig parse_config(std::string_view text)
{
    std::map<std::string, std::string, std::less<>> entries;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kKnownKeys.contains(key)) {
            throw ConfigError("config: unknown key '" + key + "' on line " + std::to_string(line_no));
        }
        if (value.empty()) {
            throw ConfigError("config: key '" + key + "' has no value");
        }
        if (!entries.emplace(key, value).second) {
            throw ConfigError("config: key '" + key + "' given more than once");
        }
    }

    auto find = [&](const char* key) -> const std::string* {
        const auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    };
    auto required = [&](const char* key) -> const std::string& {
        const std::string* v = find(key);
        require(v != nullptr, std::string("missing required key '") + key + "'");
        return *v;
    };

    RunConfig cfg;
    const std::string& problem = required("problem");
    if (problem == "pure-advection") {
        cfg.problem = ProblemKind::pure_advection;
    } else if (problem == "gaussian-pulse") {
        cfg.problem = ProblemKind::gaussian_pulse;
    } else if (problem == "custom") {
        cfg.problem = ProblemKind::custom;
    } else {
        throw ConfigError("config: unknown problem '" + problem
                          + "' (expected pure-advection, gaussian-pulse or custom)");
    }

    const std::string* n = find("n");
    const std::string* h = find("h");
    require(!(n && h), "conflicting keys 'n' and 'h'; give exactly one");
    require(n || h, "missing required key: one of 'n' or 'h'");
    if (n) {
        cfg.n = parse_integer("n", *n);
        require(*cfg.n >= 3, "'n' must be at least 3");
    } else {
        cfg.h = parse_number("h", *h);
        require(*cfg.h > 0.0, "'h' must be positive");
    }

    cfg.dt = parse_number("dt", required("dt"));
    require(cfg.dt > 0.0, "'dt' must be positive");
    cfg.t_final = parse_number("t_final", required("t_final"));
    require(cfg.t_final >= 0.0, "'t_final' must be non-negative");
    cfg.p = parse_number("p", required("p"));
    require(cfg.p > 0.0, "'p' must be positive");

    if (const std::string* v = find("xi")) {
        cfg.xi = parse_number("xi", *v);
    }
    if (const std::string* v = find("lambda")) {
        cfg.lambda = parse_number("lambda", *v);
        require(*cfg.lambda >= 0.0, "'lambda' must be non-negative");
    }
    if (const std::string* v = find("x0")) {
        require(cfg.problem != ProblemKind::custom, "'x0' does not apply to custom problems");
        cfg.x0 = parse_number("x0", *v);
    }
    if (const std::string* v = find("snapshots")) {
        cfg.snapshots = parse_list("snapshots", *v);
        for (double t : cfg.snapshots) {
            require(t >= 0.0 && t <= cfg.t_final, "snapshot times must lie in [0, t_final]");
        }
    }
    if (const std::string* v = find("quad_order")) {
        cfg.quad_order = parse_integer("quad_order", *v);
        require(cfg.quad_order >= kMinQuadratureOrder && cfg.quad_order <= 30,
                "'quad_order' must be in 8..30");
    }

    if (cfg.problem == ProblemKind::custom) {
        cfg.a = parse_number("a", required("a"));
        cfg.b = parse_number("b", required("b"));
        require(*cfg.a < *cfg.b, "'a' must be less than 'b'");
        cfg.u0 = required("u0");
        cfg.exact = required("exact");
        check_expression("u0", cfg.u0);
        check_expression("exact", cfg.exact);
        if (const std::string* v = find("f0")) {
            cfg.f0 = *v;
            check_expression("f0", cfg.f0);
        }
        if (const std::string* v = find("fl")) {
            cfg.fl = *v;
            check_expression("fl", cfg.fl);
        }
    } else {
        for (const auto& key : kCustomOnly) {
            require(!entries.contains(key),
                    "key '" + key + "' only applies to problem = custom");
        }
    }

    const double ratio = cfg.t_final / cfg.dt;
    require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio),
            "'t_final' must be a whole number of 'dt' steps");
    require(ratio <= static_cast<double>(kMaxSteps), "more than 1e8 time steps requested");
    require(element_count(cfg) >= 3, "the mesh needs at least 3 elements");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot read '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string canonical_form(const RunConfig& c)
{
    std::ostringstream out;
    out << "problem = " << to_string(c.problem) << '\n';
    if (c.n) {
        out << "n = " << *c.n << '\n';
    }
    if (c.h) {
        out << "h = " << format_double(*c.h) << '\n';
    }
    out << "dt = " << format_double(c.dt) << '\n';
    out << "t_final = " << format_double(c.t_final) << '\n';
    out << "p = " << format_double(c.p) << '\n';
    if (c.xi) {
        out << "xi = " << format_double(*c.xi) << '\n';
    }
    if (c.lambda) {
        out << "lambda = " << format_double(*c.lambda) << '\n';
    }
    if (c.x0) {
        out << "x0 = " << format_double(*c.x0) << '\n';
    }
    if (!c.snapshots.empty()) {
        out << "snapshots = ";
        for (std::size_t i = 0; i < c.snapshots.size(); ++i) {
            out << (i ? "," : "") << format_double(c.snapshots[i]);
        }
        out << '\n';
    }
    out << "quad_order = " << c.quad_order << '\n';
    if (c.a) {
        out << "a = " << format_double(*c.a) << '\n';
    }
    if (c.b) {
        out << "b = " << format_double(*c.b) << '\n';
    }
    if (!c.u0.empty()) {
        out << "u0 = " << c.u0 << '\n';
    }
    if (!c.exact.empty()) {
        out << "exact = " << c.exact << '\n';
    }
    if (!c.f0.empty()) {
        out << "f0 = " << c.f0 << '\n';
    }
    if (!c.fl.empty()) {
        out << "fl = " << c.fl << '\n';
    }
    return out.str();
}

double domain_start(const RunConfig& c)
{
    switch (c.problem) {
    case ProblemKind::pure_advection:
        return 0.0;
    case ProblemKind::gaussian_pulse:
        return GaussianPulseParams{}.a;
    case ProblemKind::custom:
        return c.a.value_or(0.0);
    }
    return 0.0;
}

double domain_end(const RunConfig& c)
{
    switch (c.problem) {
    case ProblemKind::pure_advection:
        return PureAdvectionParams{}.length;
    case ProblemKind::gaussian_pulse:
        return GaussianPulseParams{}.b;
    case ProblemKind::custom:
        return c.b.value_or(1.0);
    }
    return 1.0;
}

int element_count(const RunConfig& c)
{
    if (c.n) {
        return *c.n;
    }
    try {
        return elements_for_spacing(domain_start(c), domain_end(c), c.h.value_or(0.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

double mesh_spacing(const RunConfig& c)
{
    return (domain_end(c) - domain_start(c)) / element_count(c);
}

double velocity(const RunConfig& c)
{
    if (c.xi) {
        return *c.xi;
    }
    switch (c.problem) {
    case ProblemKind::pure_advection:
        return PureAdvectionParams{}.xi;
    case ProblemKind::gaussian_pulse:
        return GaussianPulseParams{}.xi;
    case ProblemKind::custom:
        return 0.0;
    }
    return 0.0;
}

double diffusion(const RunConfig& c)
{
    if (c.lambda) {
        return *c.lambda;
    }
    return c.problem == ProblemKind::gaussian_pulse ? GaussianPulseParams{}.lambda : 0.0;
}

double courant_number(const RunConfig& c)
{
    return ebsg::courant_number(velocity(c), c.dt, mesh_spacing(c));
}

namespace {

PureAdvectionParams advection_params(const RunConfig& c)
{
    PureAdvectionParams params;
    params.xi = velocity(c);
    if (c.x0) {
        params.x0 = *c.x0;
    }
    return params;
}

GaussianPulseParams pulse_params(const RunConfig& c)
{
    GaussianPulseParams params;
    params.xi = velocity(c);
    params.lambda = diffusion(c);
    if (c.x0) {
        params.x0 = *c.x0;
    }
    return params;
}

}  // namespace

ProblemSpec to_problem(const RunConfig& c)
{
    const int n = element_count(c);
    switch (c.problem) {
    case ProblemKind::pure_advection: {
        ProblemSpec spec = make_pure_advection(advection_params(c), n, c.dt, c.t_final, c.p);
        spec.lambda = diffusion(c);
        return spec;
    }
    case ProblemKind::gaussian_pulse:
        return make_gaussian_pulse(pulse_params(c), n, c.dt, c.t_final, c.p);
    case ProblemKind::custom:
        break;
    }

    ProblemSpec spec;
    spec.xi = velocity(c);
    spec.lambda = diffusion(c);
    spec.a = domain_start(c);
    spec.b = domain_end(c);
    spec.elements = n;
    spec.p = c.p;
    spec.dt = c.dt;
    spec.t_final = c.t_final;
    const Expression u0 = Expression::parse(c.u0);
    const Expression f0 = Expression::parse(c.f0.empty() ? "0" : c.f0);
    const Expression fl = Expression::parse(c.fl.empty() ? "0" : c.fl);
    const double a = spec.a;
    const double b = spec.b;
    spec.initial = [u0](double x) { return u0(x, 0.0); };
    spec.left_boundary = [f0, a](double t) { return f0(a, t); };
    spec.right_boundary = [fl, b](double t) { return fl(b, t); };
    return spec;
}

ExactSolution exact_solution(const RunConfig& c)
{
    switch (c.problem) {
    case ProblemKind::pure_advection: {
        const PureAdvectionParams params = advection_params(c);
        return [params](double x, double t) { return exact_pure_advection(x, t, params); };
    }
    case ProblemKind::gaussian_pulse: {
        const GaussianPulseParams params = pulse_params(c);
        return [params](double x, double t) { return exact_gaussian_pulse(x, t, params); };
    }
    case ProblemKind::custom:
        break;
    }
    const Expression exact = Expression::parse(c.exact);
    return [exact](double x, double t) { return exact(x, t); };
}

}  // namespace ebsg
