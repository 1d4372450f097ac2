#include "abperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abperc {

ProportionEstimate wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    ProportionEstimate out;
    out.successes = successes;
    out.trials = trials;
    if (trials == 0) return out;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    out.p = p;
    out.lo = std::max(0.0, centre - half);
    out.hi = std::min(1.0, centre + half);
    return out;
}

Moments moments(std::span<const double> values) {
    Moments m;
    m.count = values.size();
    if (values.empty()) return m;
    double sum = 0.0;
    for (double v : values) sum += v;
    m.mean = sum / static_cast<double>(m.count);
    if (m.count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.variance = ss / static_cast<double>(m.count - 1);
        m.se = std::sqrt(m.variance / static_cast<double>(m.count));
    }
    return m;
}

double poisson_pmf(std::uint64_t k, double mean) {
    if (mean < 0.0) throw std::domain_error("poisson_pmf: negative mean");
    if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
    const double kk = static_cast<double>(k);
    return std::exp(kk * std::log(mean) - mean - std::lgamma(kk + 1.0));
}

double dtv_poisson(std::span<const std::uint64_t> samples, double beta) {
    if (!(beta > 0.0)) throw std::domain_error("dtv_poisson: beta must be positive");
    if (samples.empty()) throw std::invalid_argument("dtv_poisson: no samples");
    const std::uint64_t kmax = *std::max_element(samples.begin(), samples.end());
    std::vector<double> freq(kmax + 1, 0.0);
    for (auto s : samples) freq[s] += 1.0;
    const double n = static_cast<double>(samples.size());
    double l1 = 0.0;
    double head = 0.0;
    for (std::uint64_t k = 0; k <= kmax; ++k) {
        const double pk = poisson_pmf(k, beta);
        head += pk;
        l1 += std::abs(freq[k] / n - pk);
    }
    l1 += std::max(0.0, 1.0 - head);
    return std::clamp(0.5 * l1, 0.0, 1.0);
}

}  // namespace abperc
