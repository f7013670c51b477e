// Copyright 2026 The orbitprec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ORBITPREC_DECIMAL_HPP
#define ORBITPREC_DECIMAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace orbitprec {

/// Parses "a/b" fractions and decimal literals ("3.75", "-0.005", "1e-3")
/// into an exact rational. Throws parse_error on malformed input.
mpq_class parse_rational(std::string_view text);

/// Deterministic decimal rendering with the given number of significant
/// digits (round half to even), trailing fraction zeros trimmed.
std::string decimal_string(const mpq_class& q, int significant_digits);

}  // namespace orbitprec

#endif  // ORBITPREC_DECIMAL_HPP
