/*
   Copyright 2026 The rectfree authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RECTFREE_SERIES_HPP
#define RECTFREE_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rectfree {

/// Raised when a series operation is undefined for its input (e.g. inverting
/// a series with vanishing linear term). Distinct from std::invalid_argument,
/// which signals malformed input such as mismatched truncation orders.
class numerical_error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_order = 16;

/**
 * Truncated formal power series c_0 + c_1 z + ... + c_N z^N.
 *
 * Every result is cut at the truncation order N; terms above z^N are never
 * stored. Binary operations require both operands to carry the same order.
 */
template <class T = double>
class PowerSeries {
   public:
    using value_type = T;

    PowerSeries() : c_(1, T(0)) {}
    explicit PowerSeries(std::size_t order) : c_(order + 1, T(0)) {}
    PowerSeries(std::size_t order, std::span<const T> coeffs) : c_(order + 1, T(0)) {
        for (std::size_t i = 0; i < coeffs.size() && i <= order; ++i) c_[i] = coeffs[i];
    }
    PowerSeries(std::size_t order, std::initializer_list<T> coeffs)
        : PowerSeries(order, std::span<const T>(coeffs.begin(), coeffs.size())) {}

    static PowerSeries constant(T c, std::size_t order) {
        PowerSeries s(order);
        s.c_[0] = c;
        return s;
    }
    /// The formal variable z.
    static PowerSeries identity(std::size_t order) {
        PowerSeries s(order);
        if (order >= 1) s.c_[1] = T(1);
        return s;
    }
    /// 1/(1 - a z) = 1 + a z + a^2 z^2 + ...
    static PowerSeries geometric(T a, std::size_t order) {
        PowerSeries s(order);
        T p(1);
        for (std::size_t i = 0; i <= order; ++i, p *= a) s.c_[i] = p;
        return s;
    }

    std::size_t order() const noexcept { return c_.size() - 1; }
    const T& operator[](std::size_t i) const { return c_.at(i); }
    T& operator[](std::size_t i) { return c_.at(i); }
    std::span<const T> coeffs() const noexcept { return c_; }

    /// Same series cut (or zero-padded) to a new order. Padding is only exact
    /// when the caller knows the dropped coefficients vanish.
    PowerSeries truncated(std::size_t order) const {
        PowerSeries s(order);
        for (std::size_t i = 0; i <= order && i < c_.size(); ++i) s.c_[i] = c_[i];
        return s;
    }

    /// f(z)/z for f(0) = 0; loses one order of information.
    PowerSeries divided_by_z() const {
        if (c_[0] != T(0)) throw numerical_error("divided_by_z: nonzero constant term");
        if (order() == 0) throw std::invalid_argument("divided_by_z: order 0 series");
        PowerSeries s(order() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) s.c_[i - 1] = c_[i];
        return s;
    }
    /// z f(z); gains one order of information.
    PowerSeries times_z() const {
        PowerSeries s(order() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) s.c_[i + 1] = c_[i];
        return s;
    }

    PowerSeries operator-() const {
        PowerSeries s(*this);
        for (auto& x : s.c_) x = -x;
        return s;
    }
    PowerSeries& operator+=(const PowerSeries& rhs) {
        check_order(rhs, "add");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
        return *this;
    }
    PowerSeries& operator-=(const PowerSeries& rhs) {
        check_order(rhs, "sub");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
        return *this;
    }
    PowerSeries& operator*=(const PowerSeries& rhs) {
        check_order(rhs, "mul");
        const std::size_t n = order();
        std::vector<T> out(n + 1, T(0));
        for (std::size_t i = 0; i <= n; ++i) {
            if (c_[i] == T(0)) continue;
            for (std::size_t j = 0; i + j <= n; ++j) out[i + j] += c_[i] * rhs.c_[j];
        }
        c_ = std::move(out);
        return *this;
    }
    PowerSeries& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    PowerSeries& operator+=(const T& s) {
        c_[0] += s;
        return *this;
    }
    PowerSeries& operator-=(const T& s) {
        c_[0] -= s;
        return *this;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, const PowerSeries& b) { return a *= b; }
    friend PowerSeries operator*(PowerSeries a, const T& s) { return a *= s; }
    friend PowerSeries operator*(const T& s, PowerSeries a) { return a *= s; }
    friend PowerSeries operator+(PowerSeries a, const T& s) { return a += s; }
    friend PowerSeries operator+(const T& s, PowerSeries a) { return a += s; }
    friend PowerSeries operator-(PowerSeries a, const T& s) { return a -= s; }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const PowerSeries& s) {
        os << '[';
        for (std::size_t i = 0; i < s.c_.size(); ++i) os << (i ? ", " : "") << s.c_[i];
        return os << "] + O(z^" << s.order() + 1 << ')';
    }

   private:
    void check_order(const PowerSeries& rhs, const char* what) const {
        if (rhs.order() != order())
            throw std::invalid_argument(std::string(what) + ": truncation orders differ (" +
                                        std::to_string(order()) + " vs " + std::to_string(rhs.order()) + ")");
    }

    std::vector<T> c_;
};

/// f∘g, truncated. Requires g(0) = 0 so that every coefficient is a finite sum.
template <class T>
PowerSeries<T> compose(const PowerSeries<T>& f, const PowerSeries<T>& g) {
    if (f.order() != g.order()) throw std::invalid_argument("compose: truncation orders differ");
    if (g[0] != T(0)) throw numerical_error("compose: inner series has nonzero constant term");
    const std::size_t n = f.order();
    // Horner in g
    auto out = PowerSeries<T>::constant(f[n], n);
    for (std::size_t k = n; k-- > 0;) {
        out *= g;
        out[0] += f[k];
    }
    return out;
}

/// 1/f for f(0) != 0.
template <class T>
PowerSeries<T> reciprocal(const PowerSeries<T>& f) {
    if (f[0] == T(0)) throw numerical_error("reciprocal: zero constant term");
    const std::size_t n = f.order();
    PowerSeries<T> g(n);
    g[0] = T(1) / f[0];
    for (std::size_t k = 1; k <= n; ++k) {
        T acc(0);
        for (std::size_t i = 1; i <= k; ++i) acc += f[i] * g[k - i];
        g[k] = -acc * g[0];
    }
    return g;
}

/// Positive-branch square root, g(0) = +sqrt(f(0)).
template <class T>
PowerSeries<T> sqrt_series(const PowerSeries<T>& f) {
    using std::sqrt;
    if (!(f[0] > T(0))) throw numerical_error("sqrt_series: constant term must be positive");
    const std::size_t n = f.order();
    PowerSeries<T> g(n);
    g[0] = sqrt(f[0]);
    const T twice = T(2) * g[0];
    for (std::size_t k = 1; k <= n; ++k) {
        T acc = f[k];
        for (std::size_t i = 1; i < k; ++i) acc -= g[i] * g[k - i];
        g[k] = acc / twice;
    }
    return g;
}

/**
 * Compositional inverse g with f∘g = g∘f = z at the truncation order.
 *
 * Coefficient recursion: g starts at z/c_1 and the k-th coefficient is
 * corrected by the residual of f∘g at z^k, which is linear in g_k with slope c_1.
 */
template <class T>
PowerSeries<T> invert_composition(const PowerSeries<T>& f) {
    if (f[0] != T(0)) throw numerical_error("invert_composition: nonzero constant term");
    const std::size_t n = f.order();
    if (n == 0) return PowerSeries<T>(0);
    if (f[1] == T(0)) throw numerical_error("invert_composition: zero linear coefficient");
    const T slope = f[1];
    PowerSeries<T> g(n);
    g[1] = T(1) / slope;
    for (std::size_t k = 2; k <= n; ++k) {
        // only the coefficients up to z^k matter at this step
        const auto fk = f.truncated(k);
        const auto gk = g.truncated(k);
        const T residual = compose(fk, gk)[k];
        g[k] = -residual / slope;
    }
    return g;
}

}  // namespace rectfree

#endif
