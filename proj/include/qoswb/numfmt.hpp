/*
 * Copyright 2026 The qoswb Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QOSWB_NUMFMT_HPP
#define QOSWB_NUMFMT_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace qoswb {

/// Shortest decimal text that reads back to the same double. Plain notation for
/// magnitudes in [1e-6, 1e15), scientific outside it.
inline std::string format_number(double v)
{
	if (v == 0.0) {
		return "0"; // folds -0
	}
	const double mag = std::fabs(v);
	const bool plain = mag >= 1e-6 && mag < 1e15;
	std::array<char, 400> buf{};
	auto [end, ec] = plain ? std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed)
	                       : std::to_chars(buf.data(), buf.data() + buf.size(), v);
	return std::string(buf.data(), end);
}

} // namespace qoswb

#endif // QOSWB_NUMFMT_HPP
