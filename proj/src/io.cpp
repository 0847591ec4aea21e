#include "reldiff/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace reldiff {
namespace io {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc())
        throw validation_error("parse_double: not a number: '" + s + "'");
    return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

json params_to_json(const ModelParams& p) {
    return json{{"sigma", p.sigma}, {"c", p.c}, {"r0", p.r0()}};
}

ModelParams params_from_json(const json& j) {
    return ModelParams(j.at("sigma").get<double>(), j.at("c").get<double>());
}

} // namespace

void write_density_csv(std::ostream& os, const DensityGrid& grid) {
    os << "# sigma=" << format_double(grid.params.sigma)
       << " c=" << format_double(grid.params.c)
       << " r0=" << format_double(grid.params.r0())
       << " t=" << format_double(grid.t) << "\n";
    os << "x,p\n";
    for (std::size_t i = 0; i < grid.x_values.size(); ++i)
        os << format_double(grid.x_values[i]) << "," << format_double(grid.p_values[i]) << "\n";
}

void write_density_json(std::ostream& os, const DensityGrid& grid) {
    json j{{"params", params_to_json(grid.params)},
           {"t", grid.t},
           {"x", grid.x_values},
           {"p", grid.p_values}};
    os << j.dump(2) << "\n";
}

DensityGrid read_density_csv(std::istream& is) {
    DensityGrid grid;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            // recover metadata from the comment line when present
            std::stringstream ss(line);
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double val = parse_double(tok.substr(eq + 1));
                if (key == "sigma") grid.params.sigma = val;
                else if (key == "c") grid.params.c = val;
                else if (key == "t") grid.t = val;
            }
            continue;
        }
        if (!header_seen) {
            if (line != "x,p")
                throw validation_error("density CSV: expected header 'x,p', got '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw validation_error("density CSV: expected two columns");
        grid.x_values.push_back(parse_double(fields[0]));
        grid.p_values.push_back(parse_double(fields[1]));
    }
    return grid;
}

DensityGrid read_density_json(std::istream& is) {
    json j;
    is >> j;
    DensityGrid grid;
    grid.params = params_from_json(j.at("params"));
    grid.t = j.at("t").get<double>();
    grid.x_values = j.at("x").get<std::vector<double>>();
    grid.p_values = j.at("p").get<std::vector<double>>();
    return grid;
}

void write_smile_csv(std::ostream& os, const SmileCurve& curve) {
    os << "# maturity=" << format_double(curve.maturity)
       << " forward=" << format_double(curve.forward) << "\n";
    os << "strike,price,implied_vol,delta\n";
    for (const auto& pt : curve.points)
        os << format_double(pt.strike) << "," << format_double(pt.model_price) << ","
           << (pt.inversion_ok ? format_double(pt.implied_vol) : "nan") << ","
           << format_double(pt.delta) << "\n";
}

void write_smile_json(std::ostream& os, const SmileCurve& curve) {
    json pts = json::array();
    for (const auto& pt : curve.points) {
        json jp{{"strike", pt.strike},
                {"price", pt.model_price},
                {"delta", pt.delta},
                {"inversion_ok", pt.inversion_ok}};
        if (pt.inversion_ok) jp["implied_vol"] = pt.implied_vol;
        else jp["implied_vol"] = nullptr;
        pts.push_back(jp);
    }
    json j{{"maturity", curve.maturity}, {"forward", curve.forward}, {"points", pts}};
    os << j.dump(2) << "\n";
}

SmileCurve read_smile_csv(std::istream& is) {
    SmileCurve curve;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            std::stringstream ss(line);
            std::string tok;
            while (ss >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq);
                const double val = parse_double(tok.substr(eq + 1));
                if (key == "maturity") curve.maturity = val;
                else if (key == "forward") curve.forward = val;
            }
            continue;
        }
        if (!header_seen) {
            if (line != "strike,price,implied_vol,delta")
                throw validation_error("smile CSV: unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw validation_error("smile CSV: expected four columns");
        SmilePoint pt{};
        pt.strike = parse_double(fields[0]);
        pt.model_price = parse_double(fields[1]);
        if (fields[2] == "nan") {
            pt.implied_vol = std::numeric_limits<double>::quiet_NaN();
            pt.inversion_ok = false;
        } else {
            pt.implied_vol = parse_double(fields[2]);
            pt.inversion_ok = true;
        }
        pt.delta = parse_double(fields[3]);
        curve.points.push_back(pt);
    }
    return curve;
}

void write_price_report_csv(std::ostream& os, const PriceReport& report) {
    os << "price,x_star,delta,bond_units,quad_error_estimate\n";
    os << format_double(report.price) << "," << format_double(report.x_star) << ","
       << format_double(report.delta) << "," << format_double(report.bond_units) << ","
       << format_double(report.quad_error_estimate) << "\n";
}

void write_price_report_json(std::ostream& os, const PriceReport& report) {
    json j{{"price", report.price},
           {"x_star", report.x_star},
           {"delta", report.delta},
           {"bond_units", report.bond_units},
           {"quad_error_estimate", report.quad_error_estimate}};
    os << j.dump(2) << "\n";
}

PriceReport read_price_report_json(std::istream& is) {
    json j;
    is >> j;
    PriceReport rep;
    rep.price = j.at("price").get<double>();
    rep.x_star = j.at("x_star").get<double>();
    rep.delta = j.at("delta").get<double>();
    rep.bond_units = j.at("bond_units").get<double>();
    rep.quad_error_estimate = j.at("quad_error_estimate").get<double>();
    return rep;
}

void write_paths_csv(std::ostream& os, const PathSet& paths, bool full_increments) {
    if (full_increments) {
        os << "# one row per path, one column per step increment\n";
        for (std::size_t p = 0; p < paths.n_paths; ++p) {
            for (std::size_t s = 0; s < paths.n_steps; ++s) {
                if (s) os << ",";
                os << format_double(paths.increment(p, s));
            }
            os << "\n";
        }
        return;
    }
    os << "terminal\n";
    for (std::size_t p = 0; p < paths.n_paths; ++p)
        os << format_double(paths.terminal(p)) << "\n";
}

void write_paths_summary_json(std::ostream& os, const PathSet& paths) {
    const double n = double(paths.n_paths);
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::size_t p = 0; p < paths.n_paths; ++p) {
        const double x = paths.terminal(p);
        m1 += x;
        m2 += x * x;
        m3 += x * x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m3 /= n;
    m4 /= n;
    json j{{"n_paths", paths.n_paths},
           {"n_steps", paths.n_steps},
           {"horizon", paths.times.empty() ? 0.0 : paths.times.back()},
           {"terminal_mean", m1},
           {"terminal_variance", m2 - m1 * m1},
           {"terminal_third_moment", m3},
           {"terminal_fourth_moment", m4}};
    os << j.dump(2) << "\n";
}

} // namespace io
} // namespace reldiff
