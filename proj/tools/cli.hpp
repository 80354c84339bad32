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

#ifndef RECTFREE_TOOLS_CLI_HPP
#define RECTFREE_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rectfree/convolutions.hpp>
#include <rectfree/precision.hpp>
#include <rectfree/rmt_sim.hpp>

#include "measure_spec.hpp"

namespace rectfree::cli {

enum exit_code : int { ok = 0, invalid_input = 2, numerical_failure = 3 };

inline constexpr double dr_tolerance = 1e-8;

namespace detail {

inline std::string fmt(double x, bool csv) {
    if (x == 0.0) x = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, csv ? "%.17g" : "%.6g", x);
    return buf;
}

inline void print_moments(std::ostream& os, const char* label, const Moments<wide_real>& m, bool csv) {
    if (csv) {
        os << "k," << label << '\n';
        for (std::size_t k = 1; k <= m.order(); ++k) os << k << ',' << fmt(static_cast<double>(m(k)), true) << '\n';
        return;
    }
    os << label << ": ";
    for (std::size_t k = 1; k <= m.order(); ++k)
        os << (k > 1 ? ", " : "") << fmt(static_cast<double>(m(k)), false);
    os << '\n';
}

inline std::string describe(const StieltjesVerdict& v, std::size_t order) {
    if (v.valid_at_order())
        return "valid at order " + std::to_string(order) + " (necessary condition only)";
    std::ostringstream s;
    s << "REFUTED at K=" << v.k << " (det H0 = " << fmt(v.det_unshifted, false)
      << (v.unshifted_failed ? " [not PSD]" : "") << ", det H1 = " << fmt(v.det_shifted, false)
      << (v.shifted_failed ? " [not PSD]" : "") << ")";
    return s.str();
}

struct MeasureArg {
    std::string json;
    std::string file;

    MeasureSpec load(std::size_t order, const char* what) const {
        if (!json.empty() && !file.empty()) throw validation_error(std::string(what) + ": give JSON or a file, not both");
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw validation_error(std::string(what) + ": cannot read " + file);
            std::stringstream buf;
            buf << in.rdbuf();
            return parse_measure(buf.str(), order);
        }
        if (json.empty()) throw validation_error(std::string(what) + ": no measure given");
        return parse_measure(json, order);
    }
};

}  // namespace detail

/**
 * Entry point of the `rectfree` tool. Writes results to `out` (or --out),
 * diagnostics to `err`, and returns the process exit code.
 */
inline int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Free convolutions on truncated moment sequences", "rectfree"};
    app.require_subcommand(1);

    std::size_t order = default_order;
    std::optional<double> lambda_opt;
    std::uint64_t seed = 0;
    std::size_t trials = 50;
    std::string out_file;
    std::string format = "text";
    detail::MeasureArg first, second;
    std::size_t rows = 400, cols = 800;

    auto common = [&](CLI::App* sub, bool two, bool needs_lambda) {
        sub->add_option("--order", order, "truncation order N")->check(CLI::Range(std::size_t{1}, std::size_t{64}));
        sub->add_option("--out", out_file, "write output to FILE instead of stdout");
        sub->add_option("--format", format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
        sub->add_option("--measure", first.json, "measure as JSON");
        sub->add_option("--measure-file", first.file, "measure as a JSON file");
        if (two) {
            sub->add_option("--with", second.json, "second measure as JSON");
            sub->add_option("--with-file", second.file, "second measure as a JSON file");
        }
        auto* l = sub->add_option("--lambda", lambda_opt, "rectangular ratio in [0,1]");
        if (needs_lambda) l->required();
    };

    auto* moments = app.add_subcommand("moments", "print the moments of a measure");
    common(moments, false, false);
    auto* bplus = app.add_subcommand("boxplus", "free additive convolution");
    common(bplus, true, false);
    auto* btimes = app.add_subcommand("boxtimes", "free multiplicative convolution of laws on [0,inf)");
    common(btimes, true, false);
    auto* deconv = app.add_subcommand("deconv-mp", "formal deconvolution by the Marchenko-Pastur law");
    common(deconv, false, true);
    auto* rplus = app.add_subcommand("rect-boxplus", "rectangular free convolution with ratio lambda");
    common(rplus, true, true);
    auto* vdr = app.add_subcommand("verify-dr", "check nu ⊞_lambda sqrt(mu_lambda) against its square-convolution form");
    common(vdr, false, true);
    auto* fchk = app.add_subcommand("flambda-check", "fourth-moment failure of the mixture functional");
    common(fchk, false, true);
    auto* simc = app.add_subcommand("simulate", "Monte Carlo of (A+G)(A+G)^T against the predicted moments");
    common(simc, false, false);
    simc->add_option("--seed", seed, "master seed");
    simc->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    simc->add_option("--rows", rows, "n")->check(CLI::PositiveNumber);
    simc->add_option("--cols", cols, "p")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int rc = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return rc == 0 ? ok : invalid_input;
    }

    std::ofstream file_out;
    std::ostream* os = &out;
    if (!out_file.empty()) {
        file_out.open(out_file);
        if (!file_out) {
            err << "error: cannot open " << out_file << " for writing\n";
            return invalid_input;
        }
        os = &file_out;
    }
    const bool csv = format == "csv";

    try {
        auto ratio = [&] { return Ratio(lambda_opt.value_or(0.0)); };

        if (moments->parsed()) {
            const auto spec = first.load(order, "--measure");
            const auto n = std::min(order, available_order(spec));
            detail::print_moments(*os, "moment", to_real(spec, n), csv);
        } else if (bplus->parsed()) {
            const auto a = first.load(order, "--measure"), b = second.load(order, "--with");
            const auto n = std::min({order, available_order(a), available_order(b)});
            detail::print_moments(*os, "moment", boxplus(to_real(a, n), to_real(b, n)), csv);
        } else if (btimes->parsed()) {
            const auto a = first.load(order, "--measure"), b = second.load(order, "--with");
            const auto n = std::min({order, available_order(a), available_order(b)});
            detail::print_moments(*os, "moment", boxtimes(to_positive(a, n), to_positive(b, n)), csv);
        } else if (deconv->parsed()) {
            const auto a = first.load(order, "--measure");
            const auto n = std::min(order, available_order(a));
            const auto d = deconv_mp(to_positive(a, n), ratio());
            const auto verdict = stieltjes_check(d);
            detail::print_moments(*os, "moment", d, csv);
            (csv ? err : *os) << "stieltjes: " << detail::describe(verdict, n) << '\n';
        } else if (rplus->parsed()) {
            const auto a = first.load(order, "--measure"), b = second.load(order, "--with");
            const auto n = std::min({order, available_order(a), available_order(b)});
            detail::print_moments(*os, "square_moment", rect_boxplus(to_symmetric(a, n), to_symmetric(b, n), ratio()).squares,
                                  csv);
        } else if (vdr->parsed()) {
            const auto a = first.load(order, "--measure");
            const auto n = std::min(order, available_order(a));
            const auto nu = to_symmetric(a, n);
            const auto lhs = dr_lhs(nu, ratio());
            const auto rhs = dr_rhs(nu, ratio());
            const double gap = max_moment_gap(lhs.squares, rhs.result.squares);
            if (csv) {
                *os << "k,lhs,rhs,abs_diff\n";
                for (std::size_t k = 1; k <= n; ++k) {
                    const double l = static_cast<double>(lhs.squares(k)), r = static_cast<double>(rhs.result.squares(k));
                    *os << k << ',' << detail::fmt(l, true) << ',' << detail::fmt(r, true) << ','
                        << detail::fmt(std::abs(l - r), true) << '\n';
                }
            } else {
                *os << "max discrepancy: " << detail::fmt(gap, false) << '\n';
                *os << "intermediate deconvolution: " << detail::describe(rhs.verdict, n) << '\n';
                *os << "identity: " << (gap <= dr_tolerance ? "holds" : "FAILS") << " (tolerance 1e-08)\n";
            }
            if (gap > dr_tolerance) return numerical_failure;
        } else if (fchk->parsed()) {
            const double gap = flambda_counterexample(ratio());
            if (csv)
                *os << "lambda,discrepancy\n" << detail::fmt(ratio().value(), true) << ',' << detail::fmt(gap, true) << '\n';
            else
                *os << "fourth-moment discrepancy: " << detail::fmt(gap, false) << '\n';
        } else if (simc->parsed()) {
            sim::EnsembleSpec spec;
            spec.rows = rows;
            spec.cols = cols;
            if (lambda_opt) {
                if (*lambda_opt <= 0.0 || *lambda_opt > 1.0) throw validation_error("--lambda must lie in (0,1] for simulate");
                spec.cols = static_cast<std::size_t>(std::llround(static_cast<double>(rows) / *lambda_opt));
            }
            spec.trials = trials;
            spec.master_seed = seed;
            spec.moment_order = simc->count("--order") > 0 ? order : 5;
            spec.a_atoms = (first.json.empty() && first.file.empty())
                               ? std::vector<sim::Atom>{{0.0, 1.0}}
                               : to_singular_atoms(first.load(order, "--measure"));
            try {
                spec.validate();
            } catch (const std::invalid_argument& e) {
                throw validation_error(e.what());
            }
            const auto report = sim::run_experiment(spec);
            if (csv) {
                sim::write_csv(*os, report);
            } else {
                *os << "n=" << spec.rows << " p=" << spec.cols << " lambda=" << detail::fmt(spec.lambda(), false)
                    << " trials=" << spec.trials << " seed=" << spec.master_seed << '\n';
                for (const auto& r : report.rows)
                    *os << "m_" << r.k << ": empirical " << detail::fmt(r.empirical, false) << " +- "
                        << detail::fmt(r.std_error, false) << ", predicted " << detail::fmt(r.predicted, false)
                        << ", z " << detail::fmt(r.z_score, false) << ", rel " << detail::fmt(r.rel_error, false)
                        << (r.within() ? "  ok" : "  OUTSIDE") << '\n';
            }
        }
    } catch (const numerical_error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return invalid_input;
    }
    return ok;
}

}  // namespace rectfree::cli

#endif
