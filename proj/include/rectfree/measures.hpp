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

#ifndef RECTFREE_MEASURES_HPP
#define RECTFREE_MEASURES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "series.hpp"

namespace rectfree {

/// Ratio n/p of a rectangular ensemble, 0 <= lambda <= 1.
class Ratio {
   public:
    explicit Ratio(double lambda) : lambda_(lambda) {
        if (!(lambda >= 0.0 && lambda <= 1.0))
            throw std::invalid_argument("ratio must lie in [0,1], got " + std::to_string(lambda));
    }
    double value() const noexcept { return lambda_; }
    bool is_zero() const noexcept { return lambda_ == 0.0; }
    bool is_one() const noexcept { return lambda_ == 1.0; }

   private:
    double lambda_;
};

/**
 * Moments m_1..m_N of a law (m_0 = 1 is implicit).
 *
 * The same container holds genuine moment sequences and formal ones, e.g. the
 * output of a deconvolution that does not exist as a measure. Whether a
 * sequence could come from a law on [0,inf) is asked of stieltjes_check().
 */
template <class T = double>
class Moments {
   public:
    Moments() = default;
    explicit Moments(std::vector<T> m) : m_(std::move(m)) {}
    Moments(std::initializer_list<T> m) : m_(m) {}

    std::size_t order() const noexcept { return m_.size(); }
    /// k-th moment, k = 0..N.
    T operator()(std::size_t k) const {
        if (k == 0) return T(1);
        return m_.at(k - 1);
    }
    std::span<const T> values() const noexcept { return m_; }
    std::vector<T>& values() noexcept { return m_; }

    Moments truncated(std::size_t order) const {
        std::vector<T> m(order, T(0));
        for (std::size_t i = 0; i < order && i < m_.size(); ++i) m[i] = m_[i];
        return Moments(std::move(m));
    }

    friend bool operator==(const Moments&, const Moments&) = default;

   private:
    std::vector<T> m_;
};

template <class T = double>
using PositiveMoments = Moments<T>;
template <class T = double>
using RealMoments = Moments<T>;

/// Symmetric law on the real line, held through the moments of its image
/// under t -> t^2. Odd moments vanish and m_{2k} = squares(k).
template <class T = double>
struct SymmetricMeasure {
    Moments<T> squares;

    std::size_t order() const noexcept { return squares.order(); }

    /// Full moment sequence m_1..m_{2N} with zero odd moments.
    RealMoments<T> full_moments() const {
        std::vector<T> m(2 * squares.order(), T(0));
        for (std::size_t k = 1; k <= squares.order(); ++k) m[2 * k - 1] = squares(k);
        return RealMoments<T>(std::move(m));
    }

    friend bool operator==(const SymmetricMeasure&, const SymmetricMeasure&) = default;
};

/// M(z) = sum_k m_k z^k.
template <class T>
PowerSeries<T> m_series(const Moments<T>& mu) {
    PowerSeries<T> s(mu.order());
    for (std::size_t k = 1; k <= mu.order(); ++k) s[k] = mu(k);
    return s;
}

template <class T>
Moments<T> moments_from_m_series(const PowerSeries<T>& f) {
    if (f[0] != T(0)) throw numerical_error("moments_from_m_series: nonzero constant term");
    std::vector<T> m(f.order());
    for (std::size_t k = 1; k <= f.order(); ++k) m[k - 1] = f[k];
    return Moments<T>(std::move(m));
}

namespace detail {

// Free moment-cumulant relation in triangular form:
//   m_n = sum_{s=1}^{n} kappa_s [z^{n-s}] (1 + M(z))^s,
// where the right side only involves m_1..m_{n-1} besides kappa_n.
template <class T>
T cumulant_tail(std::size_t n, std::span<const T> m, std::span<const T> kappa) {
    const std::size_t deg = n - 1;
    PowerSeries<T> one_plus_m(deg);
    one_plus_m[0] = T(1);
    for (std::size_t k = 1; k <= deg; ++k) one_plus_m[k] = m[k - 1];
    auto power = PowerSeries<T>::constant(T(1), deg);
    T acc(0);
    for (std::size_t s = 1; s < n; ++s) {
        power *= one_plus_m;
        acc += kappa[s - 1] * power[n - s];
    }
    return acc;
}

}  // namespace detail

/// Free cumulants kappa_1..kappa_N.
template <class T>
std::vector<T> cumulants_from_moments(const Moments<T>& mu) {
    const std::size_t n = mu.order();
    std::vector<T> kappa(n, T(0));
    for (std::size_t k = 1; k <= n; ++k)
        kappa[k - 1] = mu(k) - detail::cumulant_tail<T>(k, mu.values(), kappa);
    return kappa;
}

template <class T>
Moments<T> moments_from_cumulants(std::span<const T> kappa) {
    const std::size_t n = kappa.size();
    std::vector<T> m(n, T(0));
    for (std::size_t k = 1; k <= n; ++k) m[k - 1] = kappa[k - 1] + detail::cumulant_tail<T>(k, m, kappa);
    return Moments<T>(std::move(m));
}

template <class T>
Moments<T> moments_from_cumulants(const std::vector<T>& kappa) {
    return moments_from_cumulants(std::span<const T>(kappa));
}

/// m_k = c^k.
template <class T = double>
Moments<T> dirac_moments(T c, std::size_t order) {
    if (c < T(0)) throw std::invalid_argument("dirac_moments: atom must be >= 0 for a law on [0,inf)");
    std::vector<T> m(order);
    T p(1);
    for (auto& x : m) x = (p *= c);
    return Moments<T>(std::move(m));
}

/// Moments of sum_i w_i delta_{a_i}. No validation: callers decide which
/// supports and weights are legal.
template <class T = double>
Moments<T> atomic_moments(std::span<const std::pair<double, double>> atoms, std::size_t order) {
    std::vector<T> m(order, T(0));
    for (const auto& [at, w] : atoms) {
        T p(1);
        for (auto& x : m) x += T(w) * (p *= T(at));
    }
    return Moments<T>(std::move(m));
}

/// Marchenko-Pastur law mu_lambda: free cumulants lambda^(n-1); mu_0 = delta_1.
template <class T = double>
Moments<T> mp_moments(Ratio lambda, std::size_t order) {
    if (lambda.is_zero()) return dirac_moments<T>(T(1), order);
    const T l(lambda.value());
    std::vector<T> kappa(order);
    T p(1);
    for (auto& k : kappa) {
        k = p;
        p *= l;
    }
    return moments_from_cumulants(kappa);
}

/// Density of mu_lambda on [(1-sqrt(lambda))^2, (1+sqrt(lambda))^2].
inline double mp_density(Ratio lambda, double x) {
    if (lambda.is_zero()) throw std::invalid_argument("mp_density: mu_0 is the point mass delta_1");
    const double l = lambda.value();
    const double r = 4.0 * l - (x - 1.0 - l) * (x - 1.0 - l);
    if (r <= 0.0 || x <= 0.0) return 0.0;
    return std::sqrt(r) / (2.0 * std::numbers::pi * l * x);
}

/// Symmetrization of the square-root push-forward of mu.
template <class T>
SymmetricMeasure<T> symmetrize_sqrt(Moments<T> mu) {
    return SymmetricMeasure<T>{std::move(mu)};
}

/// Push-forward of nu by t -> t^2.
template <class T>
Moments<T> square(const SymmetricMeasure<T>& nu) {
    return nu.squares;
}

/// Symmetric law sum_i w_i (delta_{a_i} + delta_{-a_i}) / 2.
template <class T = double>
SymmetricMeasure<T> symmetric_atoms(std::span<const std::pair<double, double>> atoms, std::size_t order) {
    std::vector<std::pair<double, double>> sq;
    sq.reserve(atoms.size());
    for (const auto& [a, w] : atoms) sq.emplace_back(a * a, w);
    return SymmetricMeasure<T>{atomic_moments<T>(sq, order)};
}

template <class T = double>
SymmetricMeasure<T> rademacher(std::size_t order) {
    return SymmetricMeasure<T>{dirac_moments<T>(T(1), order)};
}

// ---------------------------------------------------------------------------
// Hankel refutation

/// Outcome of the Stieltjes Hankel test. Passing is only a necessary
/// condition; a finite moment list never certifies that a measure exists.
struct StieltjesVerdict {
    bool refuted = false;
    std::size_t k = 0;            ///< first K whose (K+1)x(K+1) Hankel pair fails
    bool unshifted_failed = false;  ///< (m_{i+j}) has a negative eigenvalue
    bool shifted_failed = false;    ///< (m_{i+j+1}) has a negative eigenvalue
    double det_unshifted = 0.0;
    double det_shifted = 0.0;
    double min_eigenvalue = 0.0;  ///< most negative eigenvalue after unit-diagonal scaling

    bool valid_at_order() const noexcept { return !refuted; }
};

inline constexpr double hankel_eigen_floor = -1e-8;

namespace detail {

struct HankelProbe {
    double det;
    double lowest;
};

// The floor is applied after the congruence D H D with D = diag(H_ii^{-1/2}),
// which keeps the inertia and puts sequences of very different scale on a
// common footing.
template <class T>
HankelProbe probe_hankel(const Moments<T>& mu, std::size_t k, std::size_t shift) {
    const auto dim = static_cast<Eigen::Index>(k + 1);
    Eigen::MatrixXd h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) h(i, j) = static_cast<double>(mu(static_cast<std::size_t>(i + j) + shift));
    Eigen::VectorXd scale(dim);
    for (Eigen::Index i = 0; i < dim; ++i) scale(i) = h(i, i) > 0.0 ? 1.0 / std::sqrt(h(i, i)) : 1.0;
    const Eigen::MatrixXd scaled = scale.asDiagonal() * h * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
    return {h.determinant(), eig.eigenvalues()(0)};
}

}  // namespace detail

/// Positive semidefiniteness of (m_{i+j}) and (m_{i+j+1}), 0 <= i,j <= K,
/// for K = 0, 1, ... while 2K+1 <= N. Stops at the first failing K.
template <class T>
StieltjesVerdict stieltjes_check(const Moments<T>& mu) {
    for (std::size_t k = 0; 2 * k + 1 <= mu.order(); ++k) {
        const auto plain = detail::probe_hankel(mu, k, 0);
        const auto shifted = detail::probe_hankel(mu, k, 1);
        const bool bad0 = plain.lowest < hankel_eigen_floor;
        const bool bad1 = shifted.lowest < hankel_eigen_floor;
        if (bad0 || bad1)
            return StieltjesVerdict{true, k, bad0, bad1, plain.det, shifted.det, std::min(plain.lowest, shifted.lowest)};
    }
    return {};
}

}  // namespace rectfree

#endif
