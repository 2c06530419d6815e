#include "fluxvar/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>

#include <json.hpp>

namespace fluxvar {

namespace {

void write_aligned(std::ostream& os, const std::vector<std::vector<std::string>>& cells) {
    if (cells.empty()) return;
    std::vector<std::size_t> width(cells.front().size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            if (c == 0)
                os << std::left << std::setw(static_cast<int>(width[c])) << row[c];
            else
                os << std::right << std::setw(static_cast<int>(width[c])) << row[c];
        }
        os << '\n';
    }
    os << std::left;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_quantity_csv(std::ostream& os, const std::vector<QuantityStats>& rows) {
    os << "quantity,mean,variance,cv,se_mean,se_var\n";
    for (const auto& q : rows)
        os << q.name << ',' << format_number(q.mean) << ',' << format_number(q.variance) << ','
           << format_number(q.cv) << ',' << format_number(q.se_mean) << ',' << format_number(q.se_var) << '\n';
}

void write_quantity_text(std::ostream& os, const std::vector<QuantityStats>& rows) {
    std::vector<std::vector<std::string>> cells(6);
    cells[0].push_back("");
    cells[1].push_back("mean");
    cells[2].push_back("variance");
    cells[3].push_back("CV");
    cells[4].push_back("se(mean)");
    cells[5].push_back("se(variance)");
    for (const auto& q : rows) {
        cells[0].push_back(q.name);
        cells[1].push_back(short_number(q.mean));
        cells[2].push_back(short_number(q.variance));
        cells[3].push_back(short_number(q.cv));
        cells[4].push_back(short_number(q.se_mean));
        cells[5].push_back(short_number(q.se_var));
    }
    write_aligned(os, cells);
}

void write_quantities(std::ostream& os, const std::vector<QuantityStats>& rows, TableFormat format) {
    if (format == TableFormat::Csv)
        write_quantity_csv(os, rows);
    else
        write_quantity_text(os, rows);
}

std::vector<QuantityStats> flux_rows(const FluxStats& stats) {
    std::vector<QuantityStats> rows;
    if (stats.input) rows.push_back(*stats.input);
    rows.insert(rows.end(), stats.fluxes.begin(), stats.fluxes.end());
    return rows;
}

void write_ordering(std::ostream& os, const OrderingReport& report, TableFormat format) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"metric", "upper", "lower", "upper_value", "lower_value", "difference", "pooled_se", "verdict"});
    for (const auto& p : report.pairs)
        cells.push_back({to_string(report.metric), p.upper, p.lower, format_number(p.upper_value),
                         format_number(p.lower_value), format_number(p.difference), format_number(p.pooled_se),
                         to_string(p.verdict)});
    if (format == TableFormat::Csv) {
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
            os << '\n';
        }
    } else {
        write_aligned(os, cells);
        os << "overall (" << to_string(report.metric) << "): " << to_string(report.overall) << '\n';
    }
}

void write_timeavg(std::ostream& os, const TimeAverageReport& report, TableFormat format) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"quantity", "A", "se_A", "B", "se_B"});
    if (report.input)
        cells.push_back({report.input->name, format_number(report.input->a), format_number(report.input->se_a),
                         format_number(report.input->b), format_number(report.input->se_b)});
    for (const auto& e : report.fluxes)
        cells.push_back({e.name, format_number(e.a), format_number(e.se_a), format_number(e.b), format_number(e.se_b)});
    std::vector<std::vector<std::string>> checks;
    checks.push_back({"check", "difference", "se", "pass"});
    for (const auto* part : {&report.part2, &report.part3})
        for (const auto& c : *part)
            checks.push_back({c.lhs + ">=" + c.rhs, format_number(c.difference), format_number(c.se),
                              c.pass ? "yes" : "no"});
    if (format == TableFormat::Csv) {
        for (const auto* block : {&cells, &checks}) {
            for (const auto& row : *block) {
                for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
                os << '\n';
            }
        }
    } else {
        os << "window: " << format_number(report.window) << '\n';
        write_aligned(os, cells);
        os << '\n';
        write_aligned(os, checks);
    }
}

void write_gdiag(std::ostream& os, const GDiagnostic& diag, TableFormat format) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"flux", "dissipation", "cross", "balance", "se_balance", "se_cross", "boundary", "balanced"});
    for (const auto& t : diag.terms)
        cells.push_back({"F_" + std::to_string(t.flux + 1), format_number(t.dissipation), format_number(t.cross),
                         format_number(t.balance), format_number(t.se_balance), format_number(t.se_cross),
                         format_number(t.boundary), t.balanced ? "yes" : "no"});
    if (format == TableFormat::Csv) {
        for (const auto& row : cells) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
            os << '\n';
        }
    } else {
        os << "window: " << format_number(diag.window) << '\n';
        write_aligned(os, cells);
    }
}

void write_coupling_csv(std::ostream& os, const CouplingResult& result) {
    os << "time,divergence,x_first,y_first\n";
    for (std::size_t r = 0; r < result.times.size(); ++r)
        os << format_number(result.times[r]) << ',' << format_number(result.divergence[r]) << ','
           << format_number(result.first_x[r]) << ',' << format_number(result.first_y[r]) << '\n';
}

void write_lyapunov_json(std::ostream& os, const LyapunovSpec& spec) {
    nlohmann::ordered_json j;
    j["V"] = spec.V;
    j["c"] = spec.c;
    j["k"] = spec.k;
    j["R"] = spec.R;
    j["margin"] = spec.margin;
    j["xbar"] = spec.xbar;
    j["worst_point"] = spec.worst_point;
    j["points"] = spec.points_checked;
    os << j.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "time";
    for (const auto& n : traj.species_names) os << ",x_" << n;
    for (std::size_t i = 0; i < traj.n_reactions; ++i) os << ",F_" << i + 1;
    os << ",xi\n";
    for (std::size_t r = 0; r < traj.size(); ++r) {
        os << format_number(traj.times[r]);
        for (double v : traj.state(r)) os << ',' << format_number(v);
        for (double v : traj.flux(r)) os << ',' << format_number(v);
        os << ',' << format_number(traj.input_noise[r]) << '\n';
    }
}

}  // namespace fluxvar
