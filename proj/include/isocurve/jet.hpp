#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace isocurve {

/// Second-order jet in N variables: a function value together with its
/// exact gradient and Hessian at a point. Arithmetic applies the product,
/// quotient and chain rules so derivatives carry no truncation error.
///
/// The Hessian is stored as the upper triangle in row-major order:
/// N == 1 -> [dxx], N == 2 -> [duu, duv, dvv].
template <int N>
struct Jet {
    static_assert(N == 1 || N == 2, "only 1- and 2-variable jets are used");
    static constexpr int kNumSecond = N * (N + 1) / 2;

    double val = 0.0;
    std::array<double, N> d{};
    std::array<double, kNumSecond> dd{};

    Jet() = default;
    Jet(double c) : val(c) {} // NOLINT: implicit by design, enables mixed arithmetic

    /// Index of the (i, j) Hessian entry, i <= j.
    static constexpr int pairIndex(int i, int j) { return i * (2 * N - i - 1) / 2 + j; }

    static Jet constant(double c) { return Jet(c); }

    static Jet variable(double x, int index) {
        Jet r(x);
        r.d[static_cast<std::size_t>(index)] = 1.0;
        return r;
    }
};

template <int N>
Jet<N> operator+(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    r.val = a.val + b.val;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    for (int k = 0; k < Jet<N>::kNumSecond; ++k) r.dd[k] = a.dd[k] + b.dd[k];
    return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    r.val = a.val - b.val;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    for (int k = 0; k < Jet<N>::kNumSecond; ++k) r.dd[k] = a.dd[k] - b.dd[k];
    return r;
}

template <int N>
Jet<N> operator-(const Jet<N>& a) {
    Jet<N> r;
    r.val = -a.val;
    for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
    for (int k = 0; k < Jet<N>::kNumSecond; ++k) r.dd[k] = -a.dd[k];
    return r;
}

template <int N>
Jet<N> operator*(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> r;
    r.val = a.val * b.val;
    for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.val + a.val * b.d[i];
    int k = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i; j < N; ++j, ++k) {
            r.dd[k] = a.dd[k] * b.val + a.d[i] * b.d[j] + a.d[j] * b.d[i] + a.val * b.dd[k];
        }
    }
    return r;
}

template <int N>
Jet<N> operator/(const Jet<N>& a, const Jet<N>& b) {
    Jet<N> q;
    q.val = a.val / b.val;
    for (int i = 0; i < N; ++i) q.d[i] = (a.d[i] - q.val * b.d[i]) / b.val;
    int k = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i; j < N; ++j, ++k) {
            q.dd[k] =
                (a.dd[k] - q.val * b.dd[k] - q.d[i] * b.d[j] - q.d[j] * b.d[i]) / b.val;
        }
    }
    return q;
}

/// Composes f with the jet x given f, f', f'' evaluated at x.val.
template <int N>
Jet<N> chainUnary(const Jet<N>& x, double f0, double f1, double f2) {
    Jet<N> r;
    r.val = f0;
    for (int i = 0; i < N; ++i) r.d[i] = f1 * x.d[i];
    int k = 0;
    for (int i = 0; i < N; ++i) {
        for (int j = i; j < N; ++j, ++k) {
            r.dd[k] = f1 * x.dd[k] + f2 * x.d[i] * x.d[j];
        }
    }
    return r;
}

template <int N>
Jet<N> sin(const Jet<N>& x) {
    const double s = std::sin(x.val);
    return chainUnary(x, s, std::cos(x.val), -s);
}

template <int N>
Jet<N> cos(const Jet<N>& x) {
    const double c = std::cos(x.val);
    return chainUnary(x, c, -std::sin(x.val), -c);
}

template <int N>
Jet<N> tan(const Jet<N>& x) {
    const double t = std::tan(x.val);
    const double sec2 = 1.0 + t * t;
    return chainUnary(x, t, sec2, 2.0 * t * sec2);
}

template <int N>
Jet<N> sinh(const Jet<N>& x) {
    const double s = std::sinh(x.val);
    return chainUnary(x, s, std::cosh(x.val), s);
}

template <int N>
Jet<N> cosh(const Jet<N>& x) {
    const double c = std::cosh(x.val);
    return chainUnary(x, c, std::sinh(x.val), c);
}

template <int N>
Jet<N> exp(const Jet<N>& x) {
    const double e = std::exp(x.val);
    return chainUnary(x, e, e, e);
}

template <int N>
Jet<N> log(const Jet<N>& x) {
    const double inv = 1.0 / x.val;
    return chainUnary(x, std::log(x.val), inv, -inv * inv);
}

template <int N>
Jet<N> sqrt(const Jet<N>& x) {
    const double s = std::sqrt(x.val);
    return chainUnary(x, s, 0.5 / s, -0.25 / (s * x.val));
}

/// x^n by repeated multiplication, so the derivative algebra stays exact.
/// Negative n goes through the quotient rule; the caller must reject a
/// zero base in that case.
template <int N>
Jet<N> powInt(const Jet<N>& x, long long n) {
    if (n < 0) return Jet<N>(1.0) / powInt(x, -n);
    Jet<N> result(1.0);
    Jet<N> base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

/// x^r for non-integer r; requires x.val > 0 (checked by the evaluator).
template <int N>
Jet<N> powReal(const Jet<N>& x, double r) {
    const double f0 = std::pow(x.val, r);
    const double f1 = r * std::pow(x.val, r - 1.0);
    const double f2 = r * (r - 1.0) * std::pow(x.val, r - 2.0);
    return chainUnary(x, f0, f1, f2);
}

// Scalar counterparts so generic evaluation code works with plain double.
// powInt mirrors the jet version's multiplication order bit for bit.
inline double powInt(double x, long long n) {
    if (n < 0) return 1.0 / powInt(x, -n);
    double result = 1.0;
    double base = x;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

inline double powReal(double x, double r) { return std::pow(x, r); }

} // namespace isocurve
