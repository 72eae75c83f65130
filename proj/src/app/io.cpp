#include "geoflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geoflow {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_cell(const std::string& cell, std::size_t line_no) {
    if (cell.empty()) return kMissing;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) {
        throw Error("diagnostics CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
    return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

nlohmann::json number_array(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(x);
    return a;
}

}  // namespace

std::string format_cell(double value) {
    if (std::isnan(value)) return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagRow>& rows) {
    out << kDiagnosticsHeader << '\n';
    for (const auto& r : rows) {
        out << format_cell(r.t) << ',' << format_cell(r.energy_A) << ',' << format_cell(r.h_q_norm) << ','
            << format_cell(r.min_ux) << ',' << format_cell(r.min_phix) << ',' << format_cell(r.m_l2) << ','
            << format_cell(r.dq_from_start) << ',' << format_cell(r.apriori_residual) << ','
            << format_cell(r.chain_rule_residual) << '\n';
    }
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagRow>& rows) {
    auto out = open_for_write(path);
    write_diagnostics_csv(out, rows);
    if (!out) throw Error("failed writing " + path.string());
}

std::vector<DiagRow> read_diagnostics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kDiagnosticsHeader) {
        throw Error("diagnostics CSV: missing or unexpected header");
    }
    std::vector<DiagRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 9) {
            throw Error("diagnostics CSV line " + std::to_string(line_no) + ": expected 9 columns");
        }
        DiagRow r;
        r.t = parse_cell(cells[0], line_no);
        r.energy_A = parse_cell(cells[1], line_no);
        r.h_q_norm = parse_cell(cells[2], line_no);
        r.min_ux = parse_cell(cells[3], line_no);
        r.min_phix = parse_cell(cells[4], line_no);
        r.m_l2 = parse_cell(cells[5], line_no);
        r.dq_from_start = parse_cell(cells[6], line_no);
        r.apriori_residual = parse_cell(cells[7], line_no);
        r.chain_rule_residual = parse_cell(cells[8], line_no);
        rows.push_back(r);
    }
    return rows;
}

std::vector<DiagRow> read_diagnostics_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return read_diagnostics_csv(in);
}

void write_final_state_json(const std::filesystem::path& path, const FinalState& s) {
    nlohmann::json j;
    j["label"] = s.label;
    j["frame"] = s.frame;
    j["symbol"] = s.symbol;
    j["n"] = s.n;
    j["status"] = std::string(to_string(s.status));
    j["t"] = s.t;
    j["u"] = number_array(s.u);
    if (s.displacement) j["phi_displacement"] = number_array(*s.displacement);
    if (s.v) j["v"] = number_array(*s.v);
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing " + path.string());
}

FinalState read_final_state_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("final-state JSON " + path.string() + ": " + e.what());
    }
    FinalState s;
    s.label = j.at("label").get<std::string>();
    s.frame = j.at("frame").get<std::string>();
    s.symbol = j.at("symbol").get<std::string>();
    s.n = j.at("n").get<int>();
    s.status = parse_status(j.at("status").get<std::string>());
    s.t = j.at("t").get<double>();
    s.u = j.at("u").get<std::vector<double>>();
    if (j.contains("phi_displacement")) s.displacement = j["phi_displacement"].get<std::vector<double>>();
    if (j.contains("v")) s.v = j["v"].get<std::vector<double>>();
    return s;
}

void write_sweep_summary(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    auto out = open_for_write(path);
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        std::string error = r.error;
        for (char& c : error) {
            if (c == ',' || c == '\n') c = ';';
        }
        out << format_cell(r.s) << ',' << r.status << ','
            << (r.stop_time ? format_cell(*r.stop_time) : std::string()) << ','
            << format_cell(r.max_abs_min_ux) << ',' << format_cell(r.energy_drift) << ',' << error << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace geoflow
