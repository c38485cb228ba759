#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ccl/stats.hpp"

namespace ccl {

namespace {

double mean_of(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

// Continued fraction for I_x(a, b); converges fast for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) return h;
    }
    return h;
}

// I_x(a, b) with y = 1 - x supplied separately so callers can avoid the
// cancellation in 1 - x.
double incomplete_beta(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace

Descriptive describe(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("describe() needs at least one value");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    Descriptive d;
    d.n = sorted.size();
    d.min = sorted.front();
    d.max = sorted.back();
    d.mean = mean_of(values);
    const auto n = sorted.size();
    d.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    if (n >= 2) d.stddev = std::sqrt(sample_variance(values, d.mean));
    return d;
}

std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width, double origin) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("bin width must be positive");
    if (values.empty()) return {};

    std::map<long long, std::size_t> counts;
    for (double v : values) {
        auto k = static_cast<long long>(std::floor((v - origin) / bin_width));
        // Correct floating-point drift so that boundary values go up.
        while (origin + static_cast<double>(k + 1) * bin_width <= v) ++k;
        while (origin + static_cast<double>(k) * bin_width > v) --k;
        ++counts[k];
    }
    std::vector<HistogramBin> bins;
    const auto first = counts.begin()->first;
    const auto last = counts.rbegin()->first;
    for (long long k = first; k <= last; ++k) {
        const auto it = counts.find(k);
        bins.push_back({origin + static_cast<double>(k) * bin_width, it == counts.end() ? 0 : it->second});
    }
    return bins;
}

std::vector<HistogramBin> fixed_histogram(std::span<const double> values, double lo, double hi,
                                          std::size_t n_bins) {
    if (n_bins == 0 || !(hi > lo)) throw std::invalid_argument("empty histogram range");
    const double span = hi - lo;
    const auto edge = [&](std::size_t k) { return lo + span * static_cast<double>(k) / static_cast<double>(n_bins); };
    std::vector<HistogramBin> bins(n_bins);
    for (std::size_t k = 0; k < n_bins; ++k) bins[k].lower = edge(k);
    for (double v : values) {
        if (!(v >= lo && v <= hi)) throw std::out_of_range("histogram value outside range");
        auto k = static_cast<std::size_t>(std::min<double>(std::floor((v - lo) / span * static_cast<double>(n_bins)),
                                                           static_cast<double>(n_bins - 1)));
        while (k + 1 < n_bins && edge(k + 1) <= v) ++k;
        while (k > 0 && edge(k) > v) --k;
        ++bins[k].count;
    }
    return bins;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta needs x in [0, 1]");
    return incomplete_beta(a, b, x, 1.0 - x);
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
    if (t == 0.0) return 1.0;
    if (std::isinf(t)) return 0.0;
    const double t2 = t * t;
    const double x = df / (df + t2);
    const double y = t2 / (df + t2);
    return std::clamp(incomplete_beta(df / 2.0, 0.5, x, y), 0.0, 1.0);
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("Welch's t-test needs at least two values per sample");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    const double va = sample_variance(a, ma) / na;
    const double vb = sample_variance(b, mb) / nb;

    WelchResult r;
    r.alpha = alpha;
    const double se2 = va + vb;
    if (se2 == 0.0) {
        if (ma != mb) throw std::domain_error("both samples are constant with different means");
        r.t = 0.0;
        r.df = na + nb - 2.0;
        r.p = 1.0;
        r.significant = false;
        return r;
    }
    r.t = (ma - mb) / std::sqrt(se2);
    r.df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    r.p = student_t_two_sided_p(r.t, r.df);
    r.significant = r.p < alpha;
    return r;
}

}  // namespace ccl
