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

#ifndef RECTFREE_RMT_SIM_HPP
#define RECTFREE_RMT_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "convolutions.hpp"
#include "measures.hpp"
#include "precision.hpp"

namespace rectfree::sim {

struct Atom {
    double value;   ///< singular value, >= 0
    double weight;
};

/// Monte Carlo configuration for (A + G)(A + G)^T with A an n x p deterministic
/// diagonal and G having i.i.d. N(0, 1/p) entries.
struct EnsembleSpec {
    std::size_t rows = 400;
    std::size_t cols = 800;
    std::vector<Atom> a_atoms{{0.0, 1.0}};
    std::size_t trials = 50;
    std::uint64_t master_seed = 0;
    std::size_t moment_order = 5;

    double lambda() const { return static_cast<double>(rows) / static_cast<double>(cols); }

    void validate() const {
        if (rows == 0 || cols == 0) throw std::invalid_argument("ensemble: rows and cols must be positive");
        if (rows > cols) throw std::invalid_argument("ensemble: need rows <= cols");
        if (trials == 0) throw std::invalid_argument("ensemble: trials must be positive");
        if (moment_order == 0) throw std::invalid_argument("ensemble: moment order must be positive");
        if (a_atoms.empty()) throw std::invalid_argument("ensemble: at least one atom required");
        double total = 0.0;
        for (const auto& a : a_atoms) {
            if (!(a.value >= 0.0)) throw std::invalid_argument("ensemble: singular values must be >= 0");
            if (!(a.weight >= 0.0)) throw std::invalid_argument("ensemble: weights must be >= 0");
            total += a.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("ensemble: weights must sum to 1");
        if (rows < a_atoms.size()) throw std::invalid_argument("ensemble: fewer rows than atoms");
    }
};

// ---------------------------------------------------------------------------
// Randomness
//
// Stream for trial t: mt19937_64 seeded with splitmix64(master + (t+1) * golden).
// Normals come from Box-Muller on 53-bit uniforms in (0,1], two per pair of
// draws, consumed in row-major order. Both the engine and the transform are
// fixed here so a seed reproduces bit-identical matrices.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t master, std::size_t trial) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(trial) + 1));
}

class GaussianStream {
   public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open_closed();
        const double u2 = uniform_open_closed();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

   private:
    double uniform_open_closed() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// n x p matrix of i.i.d. N(0, 1/p) entries, deterministic in the seed.
inline Eigen::MatrixXd sample_gaussian(std::size_t n, std::size_t p, std::uint64_t seed) {
    if (n == 0 || p == 0) throw std::invalid_argument("sample_gaussian: empty shape");
    GaussianStream g(seed);
    const double sd = 1.0 / std::sqrt(static_cast<double>(p));
    Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = sd * g.next();
    return m;
}

/// Largest-remainder apportionment of n slots to the atoms, ties to the
/// smaller atom value. Returns counts aligned with `atoms`.
inline std::vector<std::size_t> apportion(const std::vector<Atom>& atoms, std::size_t n) {
    if (n < atoms.size()) throw std::invalid_argument("apportion: fewer rows than atoms");
    std::vector<std::size_t> counts(atoms.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t used = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double quota = atoms[i].weight * static_cast<double>(n);
        counts[i] = static_cast<std::size_t>(std::floor(quota));
        used += counts[i];
        remainders.emplace_back(quota - std::floor(quota), i);
    }
    std::stable_sort(remainders.begin(), remainders.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return atoms[a.second].value < atoms[b.second].value;
    });
    for (std::size_t r = 0; used < n; ++r, ++used) ++counts[remainders[r % remainders.size()].second];
    return counts;
}

/// Deterministic n x p matrix with the atom singular values on its main
/// diagonal, ascending, in apportioned multiplicities.
inline Eigen::MatrixXd build_a(const EnsembleSpec& spec) {
    if (spec.rows < spec.a_atoms.size()) throw std::invalid_argument("build_a: fewer rows than atoms");
    const auto counts = apportion(spec.a_atoms, spec.rows);
    std::vector<std::size_t> idx(spec.a_atoms.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return spec.a_atoms[a].value < spec.a_atoms[b].value; });
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(spec.rows), static_cast<Eigen::Index>(spec.cols));
    Eigen::Index d = 0;
    for (auto i : idx)
        for (std::size_t c = 0; c < counts[i]; ++c, ++d) a(d, d) = spec.a_atoms[i].value;
    return a;
}

/// m_k = tr((M M^T)^k) / n for k = 1..K. With W symmetric,
/// tr(W^(a+b)) = sum_ij (W^a)_ij (W^b)_ij, so only powers up to ceil(K/2) are formed.
inline std::vector<double> empirical_moments(const Eigen::MatrixXd& m, std::size_t k_max) {
    if (k_max == 0) throw std::invalid_argument("empirical_moments: K must be positive");
    const Eigen::MatrixXd w = m * m.transpose();
    const double n = static_cast<double>(m.rows());
    std::vector<Eigen::MatrixXd> powers{Eigen::MatrixXd::Identity(w.rows(), w.cols()), w};
    while (powers.size() <= (k_max + 1) / 2) powers.push_back(powers.back() * w);
    std::vector<double> out(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        const std::size_t a = k / 2, b = k - a;
        out[k - 1] = powers[a].cwiseProduct(powers[b]).sum() / n;
    }
    return out;
}

/// Moments of mu_A, the law of the squared singular values of A.
inline Moments<wide_real> squared_atom_moments(const std::vector<Atom>& atoms, std::size_t order) {
    std::vector<std::pair<double, double>> sq;
    for (const auto& a : atoms) sq.emplace_back(a.value * a.value, a.weight);
    return atomic_moments<wide_real>(sq, order);
}

/// Limit moments of (A+G)(A+G)^T: the square moments of sqrt(mu_A) ⊞_lambda sqrt(mu_lambda).
inline std::vector<double> predicted_moments(const std::vector<Atom>& atoms, Ratio lambda, std::size_t order) {
    const auto out = dr_lhs(symmetrize_sqrt(squared_atom_moments(atoms, order)), lambda);
    std::vector<double> m(order);
    for (std::size_t k = 1; k <= order; ++k) m[k - 1] = static_cast<double>(out.squares(k));
    return m;
}

struct MomentRow {
    std::size_t k;
    double empirical;
    double std_error;
    double predicted;
    double z_score;
    double rel_error;

    double abs_error() const { return std::abs(empirical - predicted); }
    /// |empirical - predicted| <= max(se_mult * SE, rel_tol * |predicted|)
    bool within(double se_mult = 3.0, double rel_tol = 0.02) const {
        return abs_error() <= std::max(se_mult * std_error, rel_tol * std::abs(predicted));
    }
};

struct ExperimentReport {
    double lambda = 0.0;
    std::size_t trials = 0;
    std::vector<MomentRow> rows;

    bool all_within(double se_mult = 3.0, double rel_tol = 0.02) const {
        return std::all_of(rows.begin(), rows.end(), [&](const MomentRow& r) { return r.within(se_mult, rel_tol); });
    }
};

/// One trial: empirical moments of (A + G_t)(A + G_t)^T.
inline std::vector<double> run_trial(const EnsembleSpec& spec, const Eigen::MatrixXd& a, std::size_t t) {
    const Eigen::MatrixXd x = a + sample_gaussian(spec.rows, spec.cols, trial_seed(spec.master_seed, t));
    return empirical_moments(x, spec.moment_order);
}

/**
 * Runs all trials, spread over `threads` workers (0 = hardware concurrency).
 * Each trial owns its seed and its result slot; aggregation walks the slots
 * in trial order, so the report does not depend on scheduling.
 */
inline ExperimentReport run_experiment(const EnsembleSpec& spec, unsigned threads = 0) {
    spec.validate();
    const Eigen::MatrixXd a = build_a(spec);
    std::vector<std::vector<double>> samples(spec.trials);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, spec.trials));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t; (t = next.fetch_add(1)) < spec.trials;) samples[t] = run_trial(spec, a, t);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    const std::size_t kmax = spec.moment_order;
    const auto predicted = predicted_moments(spec.a_atoms, Ratio(spec.lambda()), kmax);
    const double trials = static_cast<double>(spec.trials);

    ExperimentReport report{spec.lambda(), spec.trials, {}};
    for (std::size_t k = 0; k < kmax; ++k) {
        double mean = 0.0;
        for (const auto& s : samples) mean += s[k];
        mean /= trials;
        double var = 0.0;
        for (const auto& s : samples) var += (s[k] - mean) * (s[k] - mean);
        const double se = spec.trials > 1 ? std::sqrt(var / (trials - 1.0) / trials) : 0.0;
        const double diff = mean - predicted[k];
        double z = 0.0;
        if (se > 0.0)
            z = diff / se;
        else if (diff != 0.0)
            z = std::copysign(std::numeric_limits<double>::infinity(), diff);
        const double rel = predicted[k] != 0.0 ? std::abs(diff / predicted[k]) : std::abs(diff);
        report.rows.push_back({k + 1, mean, se, predicted[k], z, rel});
    }
    return report;
}

/// "%.17g": enough digits for every double to round-trip.
inline std::string format_exact(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const ExperimentReport& report) {
    os << "k,empirical,se,predicted,z,rel_err\n";
    for (const auto& r : report.rows)
        os << r.k << ',' << format_exact(r.empirical) << ',' << format_exact(r.std_error) << ','
           << format_exact(r.predicted) << ',' << format_exact(r.z_score) << ',' << format_exact(r.rel_error) << '\n';
}

}  // namespace rectfree::sim

#endif
