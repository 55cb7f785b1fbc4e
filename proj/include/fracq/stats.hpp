#pragma once

// Welch's unequal-variance t-test with a self-contained Student-t CDF.
// The CDF goes through the regularized incomplete beta function, evaluated
// by its continued fraction (modified Lentz).

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "fracq/errors.hpp"

namespace fracq::stats {

namespace detail {

inline constexpr int kMaxIterations = 10000;
inline constexpr double kEpsilon = 1e-16;
inline constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), convergent for x < (a + 1) / (a + b + 2).
inline double beta_continued_fraction(double a, double b, double x) {
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
        // even step
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        // odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                             ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

}  // namespace detail

// I_x(a, b) for a, b > 0 and x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("incomplete beta needs a > 0 and b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// P(|T| >= |t|) for T ~ Student-t(df); equals I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_two_tailed(double t, double df) {
    if (!(df > 0.0)) throw ValidationError("degrees of freedom must be > 0");
    if (std::isnan(t)) throw ValidationError("t statistic is NaN");
    if (std::isinf(t)) return 0.0;
    if (t == 0.0) return 1.0;
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(0.5 * df, 0.5, x);
}

// P(T <= t) for T ~ Student-t(df).
inline double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) throw ValidationError("degrees of freedom must be > 0");
    if (std::isnan(t)) throw ValidationError("t statistic is NaN");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = 0.5 * student_t_two_tailed(t, df);
    return t > 0.0 ? 1.0 - tail : tail;
}

struct SampleSummary {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation (n - 1 denominator)
    std::size_t n = 0;
};

// Fixed-order two-pass mean and sample standard deviation.
inline SampleSummary summarize(std::span<const double> samples) {
    SampleSummary s;
    s.n = samples.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double x : samples) sum += x;
    s.mean = sum / static_cast<double>(s.n);
    if (s.n < 2) return s;
    double ss = 0.0;
    for (double x : samples) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
    return s;
}

struct WelchResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;  // Welch-Satterthwaite
    double p_value_two_tailed = 1.0;
};

// Both standard deviations zero is degenerate: equal means give t = 0 and
// p = 1, different means give t = +-inf and p = 0; df is reported as
// n_a + n_b - 2 in both cases.
inline WelchResult welch_test(const SampleSummary& a, const SampleSummary& b) {
    Violations v;
    v.check(a.n >= 2 && b.n >= 2, "each group needs n >= 2");
    v.check(std::isfinite(a.mean) && std::isfinite(b.mean), "means must be finite");
    v.check(std::isfinite(a.sd) && a.sd >= 0.0 && std::isfinite(b.sd) && b.sd >= 0.0,
            "standard deviations must be finite and >= 0");
    v.throw_if_any();

    const double na = static_cast<double>(a.n);
    const double nb = static_cast<double>(b.n);
    const double va = a.sd * a.sd / na;
    const double vb = b.sd * b.sd / nb;
    const double diff = a.mean - b.mean;

    WelchResult r;
    if (va + vb == 0.0) {
        r.degrees_of_freedom = na + nb - 2.0;
        if (diff == 0.0) {
            r.t_statistic = 0.0;
            r.p_value_two_tailed = 1.0;
        } else {
            r.t_statistic = diff > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
            r.p_value_two_tailed = 0.0;
        }
        return r;
    }
    r.t_statistic = diff / std::sqrt(va + vb);
    r.degrees_of_freedom = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    r.p_value_two_tailed = student_t_two_tailed(r.t_statistic, r.degrees_of_freedom);
    return r;
}

inline WelchResult welch_test(double mean_a, double sd_a, std::size_t n_a, double mean_b, double sd_b,
                              std::size_t n_b) {
    return welch_test(SampleSummary{mean_a, sd_a, n_a}, SampleSummary{mean_b, sd_b, n_b});
}

inline WelchResult welch_test(std::span<const double> a, std::span<const double> b) {
    return welch_test(summarize(a), summarize(b));
}

inline void to_json(nlohmann::json& j, const WelchResult& w) {
    j = {{"t_statistic", w.t_statistic},
         {"degrees_of_freedom", w.degrees_of_freedom},
         {"p_value_two_tailed", w.p_value_two_tailed}};
}

inline void to_json(nlohmann::json& j, const SampleSummary& s) {
    j = {{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
}

}  // namespace fracq::stats
