#include "reldiff/montecarlo.hpp"

#include <cmath>

#include "reldiff/martingale.hpp"

namespace reldiff {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    // stream index folded into the seeding state so each path gets an
    // independent, reproducible generator
    std::uint64_t state = seed ^ (stream * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
    for (auto& s : s_) s = splitmix64(state);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    // strictly inside (0, 1)
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    have_spare_ = true;
    return u * factor;
}

void MCConfig::validate() const {
    if (n_paths < 1) throw validation_error("MCConfig: n_paths must be >= 1");
    if (n_steps < 1) throw validation_error("MCConfig: n_steps must be >= 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw validation_error("MCConfig: horizon must be positive and finite");
}

double PathSet::terminal(std::size_t path) const {
    double sum = 0.0;
    for (std::size_t s = 0; s < n_steps; ++s) sum += increment(path, s);
    return sum;
}

double sample_inverse_gaussian(double mean, double shape, Rng& rng) {
    // Michael-Schucany-Haas transform with the rejection branch
    const double z = rng.normal();
    const double nu = z * z;
    const double y = mean + mean * mean * nu / (2.0 * shape) -
                     (mean / (2.0 * shape)) *
                         std::sqrt(4.0 * mean * shape * nu + mean * mean * nu * nu);
    if (rng.uniform() <= mean / (mean + y)) return y;
    return mean * mean / y;
}

double sample_increment(double dt, const ModelParams& params, Rng& rng) {
    if (!(dt > 0.0)) throw validation_error("sample_increment: dt must be positive");
    params.validate();
    // Normal variance mixture: the inverse-Gaussian clock I with
    // E[exp(-k^2 I / 2)] = exp(-dt psi(k)) makes Z sqrt(I) an exact draw
    // from the transition density over dt.
    const double mean = params.sigma * params.sigma * dt;
    const double shape = params.c * params.c * dt * dt;
    const double clock = sample_inverse_gaussian(mean, shape, rng);
    return rng.normal() * std::sqrt(clock);
}

PathSet simulate_paths(const MCConfig& config, const ModelParams& params) {
    config.validate();
    params.validate();
    const double dt = config.horizon / double(config.n_steps);

    PathSet paths;
    paths.n_paths = config.n_paths;
    paths.n_steps = config.n_steps;
    paths.increments.resize(config.n_paths * config.n_steps);
    paths.times.resize(config.n_steps);
    for (std::size_t s = 0; s < config.n_steps; ++s)
        paths.times[s] = dt * double(s + 1);

    for (std::size_t p = 0; p < config.n_paths; ++p) {
        Rng rng(config.seed, p);
        for (std::size_t s = 0; s < config.n_steps; ++s)
            paths.increments[p * config.n_steps + s] = sample_increment(dt, params, rng);
    }
    return paths;
}

MCPrice mc_price_call(double s_t, const OptionContract& contract,
                      double zeta, const ModelParams& params,
                      const MCConfig& config) {
    contract.validate();
    config.validate();
    if (!(s_t > 0.0) || !std::isfinite(s_t))
        throw validation_error("mc_price_call: spot must be positive and finite");
    if (!(zeta > 0.0) || zeta >= params.lambda())
        throw bound_error("mc_price_call: requires 0 < zeta < c/sigma^2");

    const double tau = contract.tau();
    if (tau == 0.0) {
        return {std::max(s_t - contract.strike, 0.0), 0.0, config.n_paths};
    }
    const double beta = drift_beta(zeta, params);
    const double discount = std::exp(-contract.rate * tau);
    const double log_drift = -(beta - contract.rate) * tau;

    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t p = 0; p < config.n_paths; ++p) {
        Rng rng(config.seed, p);
        const double x = sample_increment(tau, params, rng); // exact over tau
        const double s_T = s_t * std::exp(zeta * x + log_drift);
        const double payoff = discount * std::max(s_T - contract.strike, 0.0);
        sum += payoff;
        sum_sq += payoff * payoff;
    }
    const double n = double(config.n_paths);
    const double mean = sum / n;
    const double var = std::max(sum_sq / n - mean * mean, 0.0);
    const double std_err = std::sqrt(var / n);
    return {mean, std_err, config.n_paths};
}

} // namespace reldiff
