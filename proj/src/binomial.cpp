#include "agdn/binomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace agdn {

BinomialEstimate binomial_estimate(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("binomial_estimate: no trials");
    if (errors > trials) throw std::invalid_argument("binomial_estimate: more errors than trials");

    const double n = static_cast<double>(trials);
    const double k = static_cast<double>(errors);
    const double p = k / n;
    const double alpha = 1.0 - kConfidenceLevel;

    double half = 0.0;
    if (trials >= 1000) {
        const double z = boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
        half = z * std::sqrt(p * (1.0 - p) / n) + 0.5 / n;
    } else {
        const double lo = errors == 0 ? 0.0 : boost::math::ibeta_inv(k, n - k + 1.0, alpha / 2.0);
        const double hi = errors == trials ? 1.0 : boost::math::ibeta_inv(k + 1.0, n - k, 1.0 - alpha / 2.0);
        half = std::max(p - lo, hi - p);
    }
    return {errors, trials, p, half};
}

}  // namespace agdn
