#ifndef RELDIFF_VERSION_HPP
#define RELDIFF_VERSION_HPP

#include <cstdint>
#include <string>

namespace reldiff {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a hash over the regression parameter lattice (sigma, c, t triples
/// plus the pricing reference point), printed by `--version` so regression
/// baselines can be tied to the lattice they were generated from.
std::uint64_t reference_lattice_hash();

std::string version_string();

} // namespace reldiff

#endif
