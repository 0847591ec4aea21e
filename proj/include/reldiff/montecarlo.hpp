#ifndef RELDIFF_MONTECARLO_HPP
#define RELDIFF_MONTECARLO_HPP

#include <cstdint>
#include <vector>

#include "reldiff/model.hpp"
#include "reldiff/pricing.hpp"

namespace reldiff {

struct MCConfig {
    std::size_t n_paths = 100000;
    std::size_t n_steps = 1;
    double horizon = 1.0;
    std::uint64_t seed = 42;

    void validate() const;
};

/// Increment matrix, row per path. Terminal values are the row sums.
struct PathSet {
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    std::vector<double> increments; // row-major n_paths x n_steps
    std::vector<double> times;      // step grid, n_steps entries

    double increment(std::size_t path, std::size_t step) const {
        return increments[path * n_steps + step];
    }
    double terminal(std::size_t path) const;
};

/// Deterministic per-stream generator: xoshiro256++ seeded through splitmix64
/// from (seed, stream index). Each path owns its own stream, so results do
/// not depend on evaluation order or worker count.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();         // (0, 1)
    double normal();          // standard normal, Marsaglia polar

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// One inverse-Gaussian draw IG(mean, shape) via the Michael-Schucany-Haas
/// transform.
double sample_inverse_gaussian(double mean, double shape, Rng& rng);

/// One exact draw from the transition density P(., dt): a normal variance
/// mixture Z sqrt(I) with I ~ IG(mean = sigma^2 dt, shape = c^2 dt^2).
double sample_increment(double dt, const ModelParams& params, Rng& rng);

/// Independent-increment paths; one RNG stream per path.
PathSet simulate_paths(const MCConfig& config, const ModelParams& params);

struct MCPrice {
    double price;
    double std_error;
    std::size_t n_paths;
};

/// Monte Carlo estimator of the discounted call payoff with
/// S_T = S_t exp(zeta X - (beta - r) tau), X ~ P(., tau) drawn exactly.
MCPrice mc_price_call(double s_t, const OptionContract& contract,
                      double zeta, const ModelParams& params,
                      const MCConfig& config);

} // namespace reldiff

#endif
