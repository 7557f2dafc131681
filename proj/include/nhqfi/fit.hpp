#pragma once

#include <functional>
#include <vector>

#include "nhqfi/common.hpp"

namespace nhqfi::fit {

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
    double slope_se = 0;
    double intercept_se = 0;
    int n = 0;

    // two-sided Student-t interval on the slope
    double slope_ci_halfwidth(double confidence = 0.95) const;
};

// Ordinary least squares y = slope x + intercept. Needs >= 2 distinct x.
LinearFit linear(const std::vector<double>& x, const std::vector<double>& y);

// Fit of log y against log x; non-positive entries throw Error(invalid_argument).
LinearFit power_law(const std::vector<double>& x, const std::vector<double>& y);

struct NonlinearFit {
    RVec params;
    double rss = 0;
    int iterations = 0;
    bool converged = false;
};

// Levenberg-Marquardt least squares of model(x, p) against y with a
// forward-difference Jacobian.
NonlinearFit least_squares(const std::function<double(double, const RVec&)>& model, const std::vector<double>& x,
                           const std::vector<double>& y, const RVec& start);

}  // namespace nhqfi::fit
