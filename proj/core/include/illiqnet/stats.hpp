#pragma once

#include <span>

namespace illiqnet {

double mean(std::span<const double> xs);
/// Population standard deviation.
double stddev_pop(std::span<const double> xs);

struct PearsonResult {
    double r = 0.0;
    double p_value = 1.0;  // two-sided, t-distribution with n-2 dof
};

/// Standard Pearson correlation. Throws UndefinedStatError when n < 3 or
/// either series has zero variance; throws ValidationError on length mismatch.
PearsonResult pearson(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value for a t statistic with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// Standard normal quantile (inverse CDF), p in (0, 1).
double normal_quantile(double p);

}  // namespace illiqnet
