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

// Independent reference computations for the test suites. Nothing here calls
// into the library's algorithms; only plain containers come in and out.

#ifndef RECTFREE_TESTS_ORACLES_HPP
#define RECTFREE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

namespace rectfree::oracle {

using Partition = std::vector<std::vector<int>>;

/// All set partitions of {0..n-1}, via restricted growth strings.
inline std::vector<Partition> set_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int blocks) {
        if (i == n) {
            Partition p(static_cast<std::size_t>(blocks));
            for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(rgs[static_cast<std::size_t>(j)])].push_back(j);
            out.push_back(std::move(p));
            return;
        }
        for (int b = 0; b <= blocks; ++b) {
            rgs[static_cast<std::size_t>(i)] = b;
            rec(i + 1, std::max(blocks, b + 1));
        }
    };
    if (n == 0) return {Partition{}};
    rec(0, 0);
    return out;
}

/// No a < b < c < d with a, c in one block and b, d in another.
inline bool non_crossing(const Partition& p, int n) {
    std::vector<int> block(static_cast<std::size_t>(n));
    for (std::size_t b = 0; b < p.size(); ++b)
        for (int x : p[b]) block[static_cast<std::size_t>(x)] = static_cast<int>(b);
    auto blk = [&](int i) { return block[static_cast<std::size_t>(i)]; };
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d)
                    if (blk(a) == blk(c) && blk(b) == blk(d) && blk(a) != blk(b)) return false;
    return true;
}

inline std::vector<Partition> nc_partitions(int n) {
    std::vector<Partition> out;
    for (auto& p : set_partitions(n))
        if (non_crossing(p, n)) out.push_back(std::move(p));
    return out;
}

/// m_n = sum over NC(n) of prod kappa_{|B|}, for n = 1..kappa.size().
template <class T = double>
std::vector<T> nc_moments(const std::vector<T>& kappa) {
    std::vector<T> m;
    for (int n = 1; n <= static_cast<int>(kappa.size()); ++n) {
        T acc(0);
        for (const auto& p : nc_partitions(n)) {
            T prod(1);
            for (const auto& b : p) prod *= kappa[b.size() - 1];
            acc += prod;
        }
        m.push_back(acc);
    }
    return m;
}

/// Inverse of nc_moments, solving the same sum for the one-block term.
template <class T = double>
std::vector<T> nc_cumulants(const std::vector<T>& m) {
    std::vector<T> kappa(m.size(), T(0));
    for (int n = 1; n <= static_cast<int>(m.size()); ++n) {
        T rest(0);
        for (const auto& p : nc_partitions(n)) {
            if (p.size() == 1) continue;
            T prod(1);
            for (const auto& b : p) prod *= kappa[b.size() - 1];
            rest += prod;
        }
        kappa[static_cast<std::size_t>(n - 1)] = m[static_cast<std::size_t>(n - 1)] - rest;
    }
    return kappa;
}

/// Generalized binomial coefficient C(a, k).
inline double binom(double a, int k) {
    double c = 1.0;
    for (int i = 0; i < k; ++i) c *= (a - i) / (i + 1);
    return c;
}

/// Coefficients of (1 + x z)^a up to z^n.
inline std::vector<double> binomial_series(double a, double x, int n) {
    std::vector<double> c;
    for (int k = 0; k <= n; ++k) c.push_back(binom(a, k) * std::pow(x, k));
    return c;
}

/// Truncated product of coefficient vectors.
inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
    std::vector<double> c(n + 1, 0.0);
    for (std::size_t i = 0; i < a.size() && i <= n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

/// Truncated composition f(g(z)) by direct power expansion (g[0] must be 0).
inline std::vector<double> poly_compose(const std::vector<double>& f, const std::vector<double>& g, std::size_t n) {
    std::vector<double> out(n + 1, 0.0), power(n + 1, 0.0);
    power[0] = 1.0;
    for (std::size_t k = 0; k < f.size() && k <= n; ++k) {
        for (std::size_t i = 0; i <= n; ++i) out[i] += f[k] * power[i];
        power = poly_mul(power, g, n);
    }
    return out;
}

/// Catalan numbers C_1..C_n.
inline std::vector<double> catalan(int n) {
    std::vector<double> c;
    for (int k = 1; k <= n; ++k) c.push_back(std::round(binom(2.0 * k, k) / (k + 1)));
    return c;
}

/**
 * \int x^k f(x) dx over the support [1+l-2 sqrt(l), 1+l+2 sqrt(l)] of the
 * Marchenko-Pastur density, under x = 1 + l + 2 sqrt(l) cos(t). The midpoint
 * rule never touches the endpoints, where the density may blow up at x = 0.
 */
template <class Density>
double mp_quadrature_moment(double lambda, int k, Density&& f, int panels = 20000) {
    const double r = 2.0 * std::sqrt(lambda);
    const double h = std::numbers::pi / panels;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double t = (i + 0.5) * h;
        const double x = 1.0 + lambda + r * std::cos(t);
        acc += std::pow(x, k) * f(x) * r * std::sin(t);
    }
    return acc * h;
}

/// Atomic law with 1..4 atoms in [0.2, 3], weights normalized to 1.
struct AtomicLaw {
    std::vector<std::pair<double, double>> atoms;  // (value, weight)
};

inline std::vector<AtomicLaw> atomic_corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(0.2, 3.0), weight(0.05, 1.0);
    std::vector<AtomicLaw> out;
    for (std::size_t c = 0; c < count; ++c) {
        const std::size_t natoms = 1 + c % 4;
        AtomicLaw law;
        double total = 0.0;
        for (std::size_t i = 0; i < natoms; ++i) {
            law.atoms.emplace_back(value(rng), weight(rng));
            total += law.atoms.back().second;
        }
        for (auto& a : law.atoms) a.second /= total;
        out.push_back(std::move(law));
    }
    return out;
}

/// Even moments sum_i w_i a_i^(2k), k = 1..n, of the symmetrized law.
inline std::vector<double> symmetric_square_moments(const AtomicLaw& law, int n) {
    std::vector<double> m(static_cast<std::size_t>(n), 0.0);
    for (const auto& [a, w] : law.atoms)
        for (int k = 1; k <= n; ++k) m[static_cast<std::size_t>(k - 1)] += w * std::pow(a * a, k);
    return m;
}

}  // namespace rectfree::oracle

#endif
