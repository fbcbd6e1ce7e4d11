#pragma once

#include <functional>
#include <vector>

namespace scbf {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    int n = 0;
};
// ordinary least squares y ~ intercept + slope*x
LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

struct BatchMeans {
    double mean = 0.0;
    double se = 0.0;
    int batches = 0;
};
// non-overlapping batch means; the standard error estimator for
// autocorrelated series used by the time-average reports
BatchMeans batch_means(const std::vector<double>& samples, int n_batches = 20);

// mean and standard error of iid samples
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& samples);

// Deterministic work-sharing across SCBF_THREADS (default: hardware)
// threads; fn(i) must not depend on scheduling order.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace scbf
