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

#ifndef RECTFREE_TRANSFORMS_HPP
#define RECTFREE_TRANSFORMS_HPP

#include <cstddef>
#include <stdexcept>

#include "measures.hpp"
#include "series.hpp"

// Orders of information. With N moments available:
//   M       known through z^N
//   S       known through z^(N-1)   (the 1/z shift eats one coefficient)
//   H       known through z^(N+1)   (H = z T(M))
//   C       known through z^N

namespace rectfree {

/// Ratio and truncation order shared by the rectangular transforms. Only
/// lambda > 0 is admitted; the lambda = 0 convolution has its own path.
class TransformContext {
   public:
    TransformContext(Ratio lambda, std::size_t order = default_order) : lambda_(lambda), order_(order) {
        if (lambda.is_zero())
            throw std::invalid_argument("rectangular transforms need lambda > 0; use the lambda = 0 path");
    }
    double lambda() const noexcept { return lambda_.value(); }
    Ratio ratio() const noexcept { return lambda_; }
    std::size_t order() const noexcept { return order_; }

   private:
    Ratio lambda_;
    std::size_t order_;
};

/// S(z) = ((1+z)/z) M^{<-1>}(z), returned at order N-1.
template <class T>
PowerSeries<T> s_transform(const Moments<T>& mu) {
    if (mu.order() < 1) throw std::invalid_argument("s_transform: need at least one moment");
    if (!(mu(1) > T(0))) throw numerical_error("s_transform: first moment must be positive");
    const auto minv = invert_composition(m_series(mu));
    const auto shifted = minv.divided_by_z();
    return shifted * (PowerSeries<T>::identity(shifted.order()) + T(1));
}

/// T(z) = (lambda z + 1)(z + 1).
inline PowerSeries<double> t_poly(const TransformContext& ctx) {
    PowerSeries<double> t(ctx.order());
    t[0] = 1.0;
    if (ctx.order() >= 1) t[1] = ctx.lambda() + 1.0;
    if (ctx.order() >= 2) t[2] = ctx.lambda();
    return t;
}

/// T∘g for an arbitrary series g (constant term allowed, T is a polynomial).
template <class T>
PowerSeries<T> apply_t(double lambda, const PowerSeries<T>& g) {
    return (T(lambda) * g + T(1)) * (g + T(1));
}

/// H(z) = z (lambda M_{nu^2} + 1)(M_{nu^2} + 1), at order N+1.
template <class T>
PowerSeries<T> h_transform(const SymmetricMeasure<T>& nu, const TransformContext& ctx) {
    return apply_t(ctx.lambda(), m_series(nu.squares)).times_z();
}

/// U∘g with U(w) = (-lambda - 1 + sqrt((lambda+1)^2 + 4 lambda w)) / (2 lambda).
template <class T>
PowerSeries<T> u_series(const TransformContext& ctx, const PowerSeries<T>& g) {
    if (g[0] != T(0)) throw numerical_error("u_series: argument must vanish at 0");
    const T l(ctx.lambda());
    auto radicand = T(4) * l * g;
    radicand[0] += (l + T(1)) * (l + T(1));
    auto out = sqrt_series(radicand);
    out[0] -= l + T(1);
    out *= T(1) / (T(2) * l);
    out[0] = T(0);  // exact: sqrt((lambda+1)^2) = lambda+1
    return out;
}

/// Moments of nu^2 recovered from H via M = U(H/z - 1).
template <class T>
Moments<T> squares_from_h(const PowerSeries<T>& h, const TransformContext& ctx) {
    auto arg = h.divided_by_z();
    arg[0] -= T(1);
    return moments_from_m_series(u_series(ctx, arg));
}

/// Rectangular R-transform C(z) = U(z / H^{<-1>}(z) - 1), at order N.
template <class T>
PowerSeries<T> rect_r_transform(const SymmetricMeasure<T>& nu, const TransformContext& ctx) {
    const auto hinv = invert_composition(h_transform(nu, ctx));
    auto arg = reciprocal(hinv.divided_by_z());
    arg[0] -= T(1);
    return u_series(ctx, arg);
}

/// Inverse of rect_r_transform, via U^{<-1>}(w) = T(w) - 1:
/// H^{<-1>}(z) = z / T(C(z)), then M_{nu^2} = U(H/z - 1).
template <class T>
SymmetricMeasure<T> inverse_rect_r_transform(const PowerSeries<T>& c, const TransformContext& ctx) {
    if (c[0] != T(0)) throw numerical_error("inverse_rect_r_transform: C must vanish at 0");
    const auto hinv = reciprocal(apply_t(ctx.lambda(), c)).times_z();
    return SymmetricMeasure<T>{squares_from_h(invert_composition(hinv), ctx)};
}

}  // namespace rectfree

#endif
