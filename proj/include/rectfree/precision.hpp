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

#ifndef RECTFREE_PRECISION_HPP
#define RECTFREE_PRECISION_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace rectfree {

/// IEEE quadruple-precision scalar (113-bit significand).
///
/// Moment sequences of order 12 and beyond reach 1e10..1e14 for atoms of size
/// ~3, so coefficient identities checked at an absolute 1e-8..1e-9 need more
/// than the 53 bits of double. All algorithms are templated on the scalar;
/// the identity checks and the CLI run on this type and report in double.
using wide_real = boost::multiprecision::cpp_bin_float_quad;

}  // namespace rectfree

#endif
