#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ccl {

struct Descriptive {
    std::size_t n = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double median = 0.0;
    /// Sample standard deviation (n - 1 denominator); absent for n == 1.
    std::optional<double> stddev;
};

/// Throws std::invalid_argument on empty input.
Descriptive describe(std::span<const double> values);

struct HistogramBin {
    double lower = 0.0;
    std::size_t count = 0;

    bool operator==(const HistogramBin&) const = default;
};

/// Bins [origin + k*width, origin + (k+1)*width), from the lowest to the
/// highest occupied bin with empty interior bins included. A value on a bin
/// boundary belongs to the upper bin.
std::vector<HistogramBin> histogram(std::span<const double> values, double bin_width, double origin);

/// `n_bins` equal bins covering [lo, hi], always all emitted. The top edge
/// belongs to the last bin; values outside the range throw.
std::vector<HistogramBin> fixed_histogram(std::span<const double> values, double lo, double hi,
                                          std::size_t n_bins);

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p = 1.0;
    double alpha = 0.05;
    bool significant = false;
};

/**
 * Two-sided Welch's unequal-variance t-test.
 *
 * Both samples need at least two values. When both variances are zero the
 * test is only defined for equal means (t = 0, p = 1); unequal constant
 * samples throw std::domain_error.
 */
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// I_x(a, b), evaluated by a modified-Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

}  // namespace ccl
