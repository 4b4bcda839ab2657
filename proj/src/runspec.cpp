#include "coldplasma/runspec.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "coldplasma/output.hpp"

namespace coldplasma {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(x))
        throw ParseError("invalid number '" + v + "'", line);
    return x;
}

int parse_int(const std::string& v, int line) {
    const double x = parse_double(v, line);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw ParseError("invalid integer '" + v + "'", line);
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ParseError("invalid flag '" + v + "' (want on/off)", line);
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_double(item, line));
    }
    return out;
}

DataFamily parse_family(const std::string& v, int line) {
    if (v == "sech") return DataFamily::sech;
    if (v == "gaussian") return DataFamily::gaussian;
    if (v == "tabulated") return DataFamily::tabulated;
    throw ParseError("unknown family '" + v + "' (want sech|gaussian|tabulated)", line);
}

const char* family_name(DataFamily f) {
    switch (f) {
        case DataFamily::sech: return "sech";
        case DataFamily::gaussian: return "gaussian";
        case DataFamily::tabulated: return "tabulated";
    }
    return "?";
}

unsigned parse_tasks(const std::string& v, int line) {
    unsigned mask = 0;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item == "criteria") mask |= static_cast<unsigned>(Task::criteria);
        else if (item == "simulate") mask |= static_cast<unsigned>(Task::simulate);
        else if (item == "trace") mask |= static_cast<unsigned>(Task::trace);
        else if (item == "diagnostics") mask |= static_cast<unsigned>(Task::diagnostics);
        else throw ParseError("unknown task '" + item + "'", line);
    }
    if (mask == 0) throw ParseError("task list is empty", line);
    return mask;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += format_double(xs[i]);
    }
    return out;
}

}  // namespace

RunSpec parse_spec_text(const std::string& text, const std::string& name) {
    RunSpec spec;
    std::map<std::string, int> seen_at;  // key -> line, for late validation messages

    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        if (const size_t hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value' in " + name, line);
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ParseError("expected 'key = value' in " + name, line);
        seen_at[key] = line;

        if (key == "L") spec.sim.half_width = parse_double(val, line);
        else if (key == "N") spec.sim.n = parse_int(val, line);
        else if (key == "dt") spec.sim.dt = parse_double(val, line);
        else if (key == "t_end") spec.sim.t_end = parse_double(val, line);
        else if (key == "save_stride") spec.sim.save_stride = parse_int(val, line);
        else if (key == "picard_tol") spec.sim.picard_tol = parse_double(val, line);
        else if (key == "picard_max") spec.sim.picard_max = parse_int(val, line);
        else if (key == "rho_max") spec.sim.rho_max = parse_double(val, line);
        else if (key == "rho_min") spec.sim.rho_min = parse_double(val, line);
        else if (key == "energy_drift_max") spec.sim.energy_drift_max = parse_double(val, line);
        else if (key == "dealias") spec.sim.dealias = parse_bool(val, line);
        else if (key == "rho0_family") spec.rho0.family = parse_family(val, line);
        else if (key == "rho0_amplitude") spec.rho0.amplitude = parse_double(val, line);
        else if (key == "rho0_width") spec.rho0.width = parse_double(val, line);
        else if (key == "u0_family") spec.u0.family = parse_family(val, line);
        else if (key == "u0_amplitude") spec.u0.amplitude = parse_double(val, line);
        else if (key == "u0_width") spec.u0.width = parse_double(val, line);
        else if (key == "tabulated_path") spec.tabulated_path = val;
        else if (key == "trace_alphas") spec.trace_alphas = parse_list(val, line);
        else if (key == "snapshot_times") spec.snapshot_times = parse_list(val, line);
        else if (key == "output_dir") spec.output_dir = val;
        else if (key == "tasks") spec.tasks = parse_tasks(val, line);
        else if (key == "panel4") {
            if (val == "vB") spec.panel4 = Panel4::vB;
            else if (val == "v") spec.panel4 = Panel4::v;
            else throw ParseError("panel4 must be 'vB' or 'v'", line);
        } else if (key == "w_floor") spec.w_floor = parse_double(val, line);
        else throw ParseError("unknown key '" + key + "'", line);
    }

    auto line_of = [&](const char* key) {
        auto it = seen_at.find(key);
        return it == seen_at.end() ? 0 : it->second;
    };

    if (!(spec.sim.half_width > 0.0)) throw ParseError("L must be positive", line_of("L"));
    if (spec.sim.n < 8 || (spec.sim.n & (spec.sim.n - 1)) != 0)
        throw ParseError("N must be a power of two >= 8", line_of("N"));
    if (!(spec.sim.dt > 0.0)) throw ParseError("dt must be positive", line_of("dt"));
    if (!(spec.sim.t_end > 0.0)) throw ParseError("t_end must be positive", line_of("t_end"));
    if (spec.sim.save_stride < 1)
        throw ParseError("save_stride must be >= 1", line_of("save_stride"));
    if (!(spec.sim.picard_tol > 0.0) || spec.sim.picard_max < 1)
        throw ParseError("picard_tol/picard_max must be positive", line_of("picard_tol"));
    if (!(spec.sim.rho_max > 0.0) || !(spec.sim.rho_min > 0.0) ||
        !(spec.sim.energy_drift_max > 0.0))
        throw ParseError("thresholds must be positive", line_of("rho_max"));
    if (!(spec.w_floor > 0.0)) throw ParseError("w_floor must be positive", line_of("w_floor"));

    for (const InitialProfile* p : {&spec.rho0, &spec.u0})
        if (p->family != DataFamily::tabulated && !(p->width > 0.0))
            throw ParseError("profile width must be positive",
                             line_of(p == &spec.rho0 ? "rho0_width" : "u0_width"));
    if (spec.rho0.family != DataFamily::tabulated && spec.rho0.amplitude <= -1.0)
        throw ParseError("rho0 amplitude " + format_double(spec.rho0.amplitude) +
                             " implies rho0 <= 0 at the profile peak",
                         line_of("rho0_amplitude"));
    if ((spec.rho0.family == DataFamily::tabulated ||
         spec.u0.family == DataFamily::tabulated) &&
        spec.tabulated_path.empty())
        throw ParseError("tabulated family requires tabulated_path", line_of("rho0_family"));

    if (seen_at.count("snapshot_times")) {
        for (double t : spec.snapshot_times)
            if (t < 0.0 || t > spec.sim.t_end)
                throw ParseError("snapshot time " + format_double(t) + " outside [0, t_end]",
                                 line_of("snapshot_times"));
    } else {
        std::erase_if(spec.snapshot_times, [&](double t) { return t > spec.sim.t_end; });
        if (spec.snapshot_times.empty()) spec.snapshot_times = {0.0};
    }
    if (spec.has_task(Task::trace) && !spec.trace_alphas.empty() && spec.sim.save_stride != 1)
        throw ParseError("tracing requires save_stride = 1", line_of("save_stride"));
    for (double a : spec.trace_alphas)
        if (!(a > -spec.sim.half_width && a < spec.sim.half_width))
            throw ParseError("trace alpha " + format_double(a) + " outside (-L, L)",
                             line_of("trace_alphas"));
    return spec;
}

RunSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file '" + path + "'", 0);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), path);
}

void write_spec(const RunSpec& s, std::ostream& os) {
    os << "# coldplasma run specification\n";
    os << "L = " << format_double(s.sim.half_width) << "\n";
    os << "N = " << s.sim.n << "\n";
    os << "dt = " << format_double(s.sim.dt) << "\n";
    os << "t_end = " << format_double(s.sim.t_end) << "\n";
    os << "save_stride = " << s.sim.save_stride << "\n";
    os << "picard_tol = " << format_double(s.sim.picard_tol) << "\n";
    os << "picard_max = " << s.sim.picard_max << "\n";
    os << "rho_max = " << format_double(s.sim.rho_max) << "\n";
    os << "rho_min = " << format_double(s.sim.rho_min) << "\n";
    os << "energy_drift_max = " << format_double(s.sim.energy_drift_max) << "\n";
    os << "dealias = " << (s.sim.dealias ? "on" : "off") << "\n";
    os << "rho0_family = " << family_name(s.rho0.family) << "\n";
    os << "rho0_amplitude = " << format_double(s.rho0.amplitude) << "\n";
    os << "rho0_width = " << format_double(s.rho0.width) << "\n";
    os << "u0_family = " << family_name(s.u0.family) << "\n";
    os << "u0_amplitude = " << format_double(s.u0.amplitude) << "\n";
    os << "u0_width = " << format_double(s.u0.width) << "\n";
    if (!s.tabulated_path.empty()) os << "tabulated_path = " << s.tabulated_path << "\n";
    if (!s.trace_alphas.empty()) os << "trace_alphas = " << join(s.trace_alphas) << "\n";
    os << "snapshot_times = " << join(s.snapshot_times) << "\n";
    os << "output_dir = " << s.output_dir << "\n";
    std::string tasks;
    for (auto [t, nm] : {std::pair{Task::criteria, "criteria"}, {Task::simulate, "simulate"},
                         {Task::trace, "trace"}, {Task::diagnostics, "diagnostics"}}) {
        if (!s.has_task(t)) continue;
        if (!tasks.empty()) tasks += ", ";
        tasks += nm;
    }
    os << "tasks = " << tasks << "\n";
    os << "panel4 = " << (s.panel4 == Panel4::vB ? "vB" : "v") << "\n";
    os << "w_floor = " << format_double(s.w_floor) << "\n";
}

namespace {

Field sample_family(const InitialProfile& p, const Grid& g) {
    Field f(static_cast<size_t>(g.n));
    for (size_t j = 0; j < f.size(); ++j) {
        const double x = g.nodes[j] * p.width;
        f[j] = p.family == DataFamily::sech ? p.amplitude / std::cosh(x)
                                            : p.amplitude * std::exp(-x * x);
    }
    return f;
}

struct Table {
    std::vector<double> x, drho, u;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open tabulated data '" + path + "'", 0);
    Table t;
    std::string lineStr;
    int line = 0;
    while (std::getline(in, lineStr)) {
        ++line;
        std::string s = trim(lineStr);
        if (s.empty() || s[0] == '#') continue;
        for (char& ch : s)
            if (ch == ',') ch = ' ';
        std::istringstream ls(s);
        double a, b, c;
        if (!(ls >> a >> b >> c)) {
            if (line == 1) continue;  // header row
            throw ParseError("bad row in tabulated data '" + path + "'", line);
        }
        if (!t.x.empty() && a <= t.x.back())
            throw ParseError("tabulated x must be strictly increasing in '" + path + "'", line);
        t.x.push_back(a);
        t.drho.push_back(b);
        t.u.push_back(c);
    }
    if (t.x.size() < 2) throw ParseError("tabulated data '" + path + "' needs >= 2 rows", 0);
    return t;
}

double interp_table(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const size_t i = static_cast<size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return (1.0 - t) * ys[i - 1] + t * ys[i];
}

}  // namespace

std::pair<Field, Field> build_initial_data(const RunSpec& spec, const Grid& g) {
    Field rho0(static_cast<size_t>(g.n), 1.0), u0(static_cast<size_t>(g.n), 0.0);

    Table table;
    const bool need_table = spec.rho0.family == DataFamily::tabulated ||
                            spec.u0.family == DataFamily::tabulated;
    if (need_table) table = read_table(spec.tabulated_path);

    if (spec.rho0.family == DataFamily::tabulated) {
        for (size_t j = 0; j < rho0.size(); ++j)
            rho0[j] = 1.0 + interp_table(table.x, table.drho, g.nodes[j]);
    } else {
        const Field pert = sample_family(spec.rho0, g);
        for (size_t j = 0; j < rho0.size(); ++j) rho0[j] = 1.0 + pert[j];
    }
    if (spec.u0.family == DataFamily::tabulated) {
        for (size_t j = 0; j < u0.size(); ++j)
            u0[j] = interp_table(table.x, table.u, g.nodes[j]);
    } else {
        u0 = sample_family(spec.u0, g);
    }

    const double rmin = *std::min_element(rho0.begin(), rho0.end());
    if (!(rmin > 0.0))
        throw ParseError("initial density is not positive (min rho0 = " + format_double(rmin) +
                             ")",
                         0);
    return {std::move(rho0), std::move(u0)};
}

}  // namespace coldplasma
