#include "coldplasma/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace coldplasma {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    std::string s(buf);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path, std::ios::binary);  // binary: no newline translation
    if (!os) throw OutputError("cannot open '" + path + "' for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& path) {
    os.flush();
    if (!os) throw OutputError("write failed for '" + path + "'");
}

size_t nearest_state(const Trajectory& traj, double t) {
    size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < traj.states.size(); ++i) {
        const double gap = std::abs(traj.states[i].t - t);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    return best;
}

}  // namespace

void emit_energy_csv(const Trajectory& traj, const std::string& dir) {
    const std::string path = dir + "/energy.csv";
    auto os = open_out(path);
    os << "t,H,drift\n";
    const double H0 = traj.energies.empty() ? 0.0 : traj.energies.front().second;
    for (const auto& [t, H] : traj.energies) {
        const double drift = std::abs(H - H0) / std::max(H0, 1e-12);
        os << format_double(t) << ',' << format_double(H) << ',' << format_double(drift)
           << '\n';
    }
    finish(os, path);
}

std::vector<std::string> emit_snapshot_csvs(const Trajectory& traj,
                                            const std::vector<double>& snapshot_times,
                                            const std::string& dir) {
    std::vector<std::string> written;
    for (double t : snapshot_times) {
        const FieldState& s = traj.states[nearest_state(traj, t)];
        const std::string path = dir + "/fields_t" + time_label(t) + ".csv";
        auto os = open_out(path);
        os << "x,rho,u,v,B,vB\n";
        for (size_t j = 0; j < s.rho.size(); ++j) {
            os << format_double(traj.grid.nodes[j]) << ',' << format_double(s.rho[j]) << ','
               << format_double(s.u[j]) << ',' << format_double(s.v[j]) << ','
               << format_double(s.B[j]) << ',' << format_double(s.v[j] * s.B[j]) << '\n';
        }
        finish(os, path);
        written.push_back(path);
    }
    return written;
}

void emit_trace_csv(const CharacteristicTrace& tr, const std::string& dir) {
    const std::string path = dir + "/trace_" + time_label(tr.alpha) + ".csv";
    auto os = open_out(path);
    os << "t,x,w,wprime\n";
    for (size_t k = 0; k < tr.times.size(); ++k) {
        os << format_double(tr.times[k]) << ',' << format_double(tr.positions[k]) << ','
           << format_double(tr.w[k]) << ',' << format_double(tr.wprime[k]) << '\n';
    }
    finish(os, path);
}

void emit_criteria_csv(const BlowupCriteriaReport& report, const Field& rho0,
                       const Field& du0, const Grid& g, const std::string& dir) {
    const std::string path = dir + "/criteria.csv";
    auto os = open_out(path);
    os << "x,rho0,du0,flag_i,flag_ii,flag_iii\n";
    for (size_t j = 0; j < rho0.size(); ++j) {
        os << format_double(g.nodes[j]) << ',' << format_double(rho0[j]) << ','
           << format_double(du0[j]) << ',' << int(report.flags_i[j]) << ','
           << int(report.flags_ii[j]) << ',' << int(report.flags_iii[j]) << '\n';
    }
    finish(os, path);
}

void emit_diagnostics_csv(const DiagnosticsReport& rep, const std::string& dir) {
    const std::string path = dir + "/diagnostics.csv";
    auto os = open_out(path);
    os << "quantity,value\n";
    os << "max_B_violation," << format_double(rep.max_B_violation) << '\n';
    os << "max_identity_relerr," << format_double(rep.max_identity_relerr) << '\n';
    os << "max_energy_drift," << format_double(rep.max_energy_drift) << '\n';
    os << "mass_drift," << format_double(rep.mass_drift) << '\n';
    for (const auto& [t, vsup] : rep.v_sup_series)
        os << "v_sup_t" << time_label(t) << ',' << format_double(vsup) << '\n';
    finish(os, path);
}

// ---------------------------------------------------------------------------
// SVG snapshot figure
// ---------------------------------------------------------------------------

namespace {

constexpr int kPanelW = 460, kPanelH = 330;
constexpr int kMarginL = 58, kMarginR = 14, kMarginT = 28, kMarginB = 40;
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

struct Panel {
    std::string title;
    std::vector<std::vector<double>> series;  // one per snapshot
};

void draw_panel(std::ostringstream& svg, const Panel& panel, const Grid& g, int px, int py) {
    const int x0 = px + kMarginL, y0 = py + kMarginT;
    const int w = kPanelW - kMarginL - kMarginR, h = kPanelH - kMarginT - kMarginB;

    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& s : panel.series)
        for (double v : s) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    if (!(ymax > ymin)) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    const double xmin = -g.half_width, xmax = g.half_width;

    auto X = [&](double x) { return x0 + (x - xmin) / (xmax - xmin) * w; };
    auto Y = [&](double y) { return y0 + h - (y - ymin) / (ymax - ymin) * h; };

    svg << "<g>\n";
    svg << "<rect x='" << x0 << "' y='" << y0 << "' width='" << w << "' height='" << h
        << "' fill='none' stroke='#333' stroke-width='1'/>\n";
    svg << "<text x='" << x0 + w / 2 << "' y='" << y0 - 8
        << "' text-anchor='middle' font-family='sans-serif' font-size='14'>" << panel.title
        << "</text>\n";

    const int n_ticks = 5;
    for (int k = 0; k < n_ticks; ++k) {
        const double xv = xmin + (xmax - xmin) * k / (n_ticks - 1);
        const double yv = ymin + (ymax - ymin) * k / (n_ticks - 1);
        svg << "<line x1='" << svg_num(X(xv)) << "' y1='" << y0 + h << "' x2='"
            << svg_num(X(xv)) << "' y2='" << y0 + h + 4 << "' stroke='#333'/>\n";
        svg << "<text x='" << svg_num(X(xv)) << "' y='" << y0 + h + 16
            << "' text-anchor='middle' font-family='sans-serif' font-size='10'>"
            << tick_label(xv) << "</text>\n";
        svg << "<line x1='" << x0 - 4 << "' y1='" << svg_num(Y(yv)) << "' x2='" << x0
            << "' y2='" << svg_num(Y(yv)) << "' stroke='#333'/>\n";
        svg << "<text x='" << x0 - 6 << "' y='" << svg_num(Y(yv) + 3)
            << "' text-anchor='end' font-family='sans-serif' font-size='10'>" << tick_label(yv)
            << "</text>\n";
    }
    svg << "<text x='" << x0 + w / 2 << "' y='" << y0 + h + 30
        << "' text-anchor='middle' font-family='sans-serif' font-size='12'>x</text>\n";

    // Decimate: more than ~2 points per horizontal pixel adds nothing.
    const size_t npts = panel.series.empty() ? 0 : panel.series[0].size();
    const size_t stride = std::max<size_t>(1, npts / (2 * static_cast<size_t>(w)));
    for (size_t s = 0; s < panel.series.size(); ++s) {
        svg << "<polyline fill='none' stroke='" << kPalette[s % 8]
            << "' stroke-width='1.3' points='";
        for (size_t j = 0; j < npts; j += stride)
            svg << svg_num(X(g.nodes[j])) << ',' << svg_num(Y(panel.series[s][j])) << ' ';
        svg << "'/>\n";
    }
    svg << "</g>\n";
}

}  // namespace

std::string emit_plots(const Trajectory& traj, const std::vector<double>& snapshot_times,
                       Panel4 panel4, const std::string& dir) {
    std::vector<const FieldState*> snaps;
    std::vector<std::string> labels;
    for (double t : snapshot_times) {
        snaps.push_back(&traj.states[nearest_state(traj, t)]);
        labels.push_back("t=" + time_label(t));
    }

    Panel panels[4];
    panels[0].title = "rho";
    panels[1].title = "u";
    panels[2].title = "B";
    panels[3].title = panel4 == Panel4::vB ? "vB" : "v";
    for (const FieldState* s : snaps) {
        panels[0].series.push_back(s->rho);
        panels[1].series.push_back(s->u);
        panels[2].series.push_back(s->B);
        if (panel4 == Panel4::vB) {
            Field vb(s->v.size());
            for (size_t j = 0; j < vb.size(); ++j) vb[j] = s->v[j] * s->B[j];
            panels[3].series.push_back(std::move(vb));
        } else {
            panels[3].series.push_back(s->v);
        }
    }

    const int W = 2 * kPanelW, H = 2 * kPanelH + 24;
    std::ostringstream svg;
    svg << "<?xml version='1.0' encoding='UTF-8'?>\n";
    svg << "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' width='" << W
        << "' height='" << H << "' viewBox='0 0 " << W << ' ' << H << "'>\n";
    svg << "<rect width='" << W << "' height='" << H << "' fill='white'/>\n";
    for (int p = 0; p < 4; ++p)
        draw_panel(svg, panels[p], traj.grid, (p % 2) * kPanelW, (p / 2) * kPanelH);

    // Legend strip along the bottom.
    int lx = kMarginL;
    const int ly = 2 * kPanelH + 14;
    for (size_t s = 0; s < labels.size(); ++s) {
        svg << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 22 << "' y2='"
            << ly - 4 << "' stroke='" << kPalette[s % 8] << "' stroke-width='2'/>\n";
        svg << "<text x='" << lx + 27 << "' y='" << ly
            << "' font-family='sans-serif' font-size='12'>" << labels[s] << "</text>\n";
        lx += 27 + 12 * static_cast<int>(labels[s].size());
    }
    svg << "</svg>\n";

    const std::string path = dir + "/snapshots.svg";
    auto os = open_out(path);
    os << svg.str();
    finish(os, path);
    return path;
}

}  // namespace coldplasma
