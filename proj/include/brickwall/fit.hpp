#pragma once

#include <vector>

namespace brickwall {

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double sse = 0.0;
};

// Ordinary least squares y = intercept + slope x; needs two distinct x.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Two-parameter curve fitted by least squares on y itself (not log y).
struct CurveFit {
    double amplitude = 0.0;
    double exponent = 0.0;
    double sse = 0.0;
    bool converged = false;
};

// y = amplitude * x^exponent, x > 0.
CurveFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
// y = amplitude * exp(exponent * x).
CurveFit fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace brickwall
