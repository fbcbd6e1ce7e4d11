#include "scbf/ratefit.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace scbf {

LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) throw std::invalid_argument("ols_fit: need >= 3 points");
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        double e = y[i] - (f.intercept + f.slope * x[i]);
        ss += e * e;
    }
    f.slope_se = std::sqrt(ss / (n - 2) / sxx);
    return f;
}

BatchMeans batch_means(const std::vector<double>& samples, int n_batches) {
    BatchMeans bm;
    const int n = static_cast<int>(samples.size());
    if (n < 2 * n_batches) throw std::invalid_argument("batch_means: insufficient samples");
    bm.batches = n_batches;
    const int len = n / n_batches;
    std::vector<double> b(n_batches, 0.0);
    for (int i = 0; i < n_batches; ++i) {
        for (int j = 0; j < len; ++j) b[i] += samples[static_cast<std::size_t>(i) * len + j];
        b[i] /= len;
    }
    double m = 0;
    for (double v : b) m += v;
    m /= n_batches;
    double var = 0;
    for (double v : b) var += (v - m) * (v - m);
    var /= (n_batches - 1);
    bm.mean = m;
    bm.se = std::sqrt(var / n_batches);
    return bm;
}

MeanSe mean_se(const std::vector<double>& samples) {
    MeanSe r;
    const int n = static_cast<int>(samples.size());
    if (n < 2) throw std::invalid_argument("mean_se: need >= 2 samples");
    for (double v : samples) r.mean += v;
    r.mean /= n;
    double var = 0;
    for (double v : samples) var += (v - r.mean) * (v - r.mean);
    var /= (n - 1);
    r.se = std::sqrt(var / n);
    return r;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SCBF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) threads = v;
    }
    if (threads < 1) threads = 1;
    if (threads > n) threads = n;
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next(0);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace scbf
