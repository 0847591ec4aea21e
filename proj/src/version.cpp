#include "reldiff/version.hpp"

#include <array>
#include <cstring>

namespace reldiff {

namespace {

inline void fnv1a_feed(std::uint64_t& h, double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
}

} // namespace

std::uint64_t reference_lattice_hash() {
    // sigma x c x t regression lattice plus the pricing reference point
    constexpr std::array<double, 3> sigmas{0.2, 1.0, 3.0};
    constexpr std::array<double, 3> cs{0.1, 1.0, 10.0};
    constexpr std::array<double, 3> ts{0.1, 1.0, 5.0};
    constexpr std::array<double, 8> pricing_ref{100.0, 100.0, 0.2, 1.0, 1.0, 0.0,
                                                0.04, 16.0};
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double s : sigmas)
        for (double c : cs)
            for (double t : ts) {
                fnv1a_feed(h, s);
                fnv1a_feed(h, c);
                fnv1a_feed(h, t);
            }
    for (double v : pricing_ref) fnv1a_feed(h, v);
    return h;
}

std::string version_string() {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(reference_lattice_hash()));
    return std::string("reldiff ") + kVersion + " (lattice " + buf + ")";
}

} // namespace reldiff
