#include "illiqnet/stats.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "illiqnet/errors.hpp"

namespace illiqnet {

double mean(std::span<const double> xs) {
    double s = 0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / double(xs.size());
}

double stddev_pop(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / double(xs.size()));
}

double student_t_two_sided_p(double t, double dof) {
    boost::math::students_t dist(dof);
    double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
    return p > 1.0 ? 1.0 : p;
}

double normal_quantile(double p) {
    boost::math::normal dist;
    return boost::math::quantile(dist, p);
}

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ValidationError("pearson: length mismatch");
    size_t n = x.size();
    if (n < 3) throw UndefinedStatError("pearson: need at least 3 observations");

    double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedStatError("pearson: zero variance");

    double r = sxy / std::sqrt(sxx * syy);
    if (r > 1.0) r = 1.0;
    if (r < -1.0) r = -1.0;

    PearsonResult out;
    out.r = r;
    if (std::fabs(r) >= 1.0) {
        out.p_value = 0.0;
    } else {
        double dof = double(n) - 2.0;
        double t = r * std::sqrt(dof / (1.0 - r * r));
        out.p_value = student_t_two_sided_p(t, dof);
    }
    return out;
}

}  // namespace illiqnet
