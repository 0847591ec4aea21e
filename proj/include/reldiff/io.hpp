#ifndef RELDIFF_IO_HPP
#define RELDIFF_IO_HPP

#include <iosfwd>
#include <string>

#include "reldiff/density.hpp"
#include "reldiff/montecarlo.hpp"
#include "reldiff/pricing.hpp"

namespace reldiff {
namespace io {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);
double parse_double(const std::string& s);

// DensityGrid: CSV with header `x,p` (comment lines start with '#'),
// JSON object {params, t, x[], p[]}.
void write_density_csv(std::ostream& os, const DensityGrid& grid);
void write_density_json(std::ostream& os, const DensityGrid& grid);
DensityGrid read_density_csv(std::istream& is);
DensityGrid read_density_json(std::istream& is);

// SmileCurve: CSV columns strike,price,implied_vol,delta.
void write_smile_csv(std::ostream& os, const SmileCurve& curve);
void write_smile_json(std::ostream& os, const SmileCurve& curve);
SmileCurve read_smile_csv(std::istream& is);

void write_price_report_csv(std::ostream& os, const PriceReport& report);
void write_price_report_json(std::ostream& os, const PriceReport& report);
PriceReport read_price_report_json(std::istream& is);

// PathSet: CSV of terminal values (one row per path), optionally the full
// increment rows; summary JSON with sample moments.
void write_paths_csv(std::ostream& os, const PathSet& paths, bool full_increments = false);
void write_paths_summary_json(std::ostream& os, const PathSet& paths);

} // namespace io
} // namespace reldiff

#endif
