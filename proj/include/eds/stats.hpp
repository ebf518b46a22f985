// Small statistics toolbox: summary stats with normal-approximation CIs,
// Welch's two-sample t-test, and a two-sample Kolmogorov-Smirnov test.
// Implemented from the standard formulas; no external stats dependency.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace eds::stats {

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

struct Summary {
    std::size_t n = 0;
    double mean = 0;
    double stddev = 0;
    double ci95_low = 0;
    double ci95_high = 0;
};

inline Summary summarize(std::span<const double> xs) {
    Summary s;
    s.n = xs.size();
    s.mean = mean(xs);
    s.stddev = std::sqrt(sample_variance(xs));
    double half = 1.96 * s.stddev / std::sqrt(static_cast<double>(s.n));
    s.ci95_low = s.mean - half;
    s.ci95_high = s.mean + half;
    return s;
}

namespace detail {

// Regularized incomplete beta via the Lentz continued fraction.
inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kFpMin = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

inline double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double lnb = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(lnb);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// P(T <= t) for Student's t with df degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (df <= 0) throw std::invalid_argument("student_t_cdf: df must be positive");
    double x = df / (df + t * t);
    double p = 0.5 * detail::incbeta(df / 2.0, 0.5, x);
    return t > 0 ? 1.0 - p : p;
}

struct WelchResult {
    double t = 0;
    double df = 0;
    double p_value = 1.0;  // two-tailed
};

inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::invalid_argument("welch_t_test: need at least 2 samples per group");
    }
    double ma = mean(a), mb = mean(b);
    double va = sample_variance(a), vb = sample_variance(b);
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double se2 = va / na + vb / nb;
    WelchResult r;
    if (se2 == 0.0) {
        // Both groups constant: identical means are indistinguishable,
        // different means are trivially distinct.
        r.t = (ma == mb) ? 0.0 : std::numeric_limits<double>::infinity();
        r.df = na + nb - 2;
        r.p_value = (ma == mb) ? 1.0 : 0.0;
        return r;
    }
    r.t = (ma - mb) / std::sqrt(se2);
    double num = se2 * se2;
    double den = 0.0;
    if (va > 0) den += (va / na) * (va / na) / (na - 1);
    if (vb > 0) den += (vb / nb) * (vb / nb) / (nb - 1);
    r.df = num / den;
    r.p_value = 2.0 * (1.0 - student_t_cdf(std::fabs(r.t), r.df));
    if (r.p_value < 0) r.p_value = 0;
    return r;
}

struct KsResult {
    double statistic = 0;   // sup |F_a - F_b|
    double threshold = 0;   // critical value at the requested alpha
    bool distinguishable = false;
};

// Two-sample KS test with the asymptotic critical value
// c(alpha) * sqrt((n+m)/(n*m)), c(alpha) = sqrt(-ln(alpha/2)/2).
inline KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                              double alpha) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> xs(a.begin(), a.end());
    std::vector<double> ys(b.begin(), b.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double n = static_cast<double>(xs.size()), m = static_cast<double>(ys.size());
    double d = 0;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] <= v) ++i;
        while (j < ys.size() && ys[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    KsResult r;
    r.statistic = d;
    double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
    r.threshold = c * std::sqrt((n + m) / (n * m));
    r.distinguishable = d > r.threshold;
    return r;
}

}  // namespace eds::stats
