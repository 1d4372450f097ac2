#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace abperc {

struct ProportionEstimate {
    std::size_t successes = 0;
    std::size_t trials = 0;
    double p = 0.0;
    double lo = 0.0;  // Wilson interval
    double hi = 1.0;
};

/// Wilson score interval; z = 1.96 gives 95%.
ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased; 0 for fewer than two values
    double se = 0.0;
};

Moments moments(std::span<const double> values);

double poisson_pmf(std::uint64_t k, double mean);

/// Total-variation distance between the empirical law of `samples` and
/// Poisson(beta). The mass above the largest observed value is added from
/// the Poisson tail in closed form.
double dtv_poisson(std::span<const std::uint64_t> samples, double beta);

}  // namespace abperc
