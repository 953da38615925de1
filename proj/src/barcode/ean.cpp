/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/barcode.h"

#include "healthwise/error.h"

#include <array>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>

namespace healthwise::barcode {

namespace {

// L (odd parity) codes, left half. R codes are the complement, G codes the reversed R codes.
constexpr std::array<std::string_view, 10> L_CODES = {
	"0001101", "0011001", "0010011", "0111101", "0100011", "0110001", "0101111", "0111011", "0110111", "0001011",
};

// Parity of the six left-half digits, indexed by the implied leading digit.
constexpr std::array<std::string_view, 10> FIRST_DIGIT_PARITY = {
	"LLLLLL", "LLGLGG", "LLGGLG", "LLGGGL", "LGLLGG", "LGGLLG", "LGGGLL", "LGLGLG", "LGLGGL", "LGGLGL",
};

constexpr std::string_view START_END_GUARD = "101";
constexpr std::string_view CENTER_GUARD = "01010";
constexpr int DIGIT_MODULES = 7;
constexpr int QUIET_ZONE_MODULES = 7;

using Widths = std::array<int, 4>;

Widths widths_of(std::string_view code)
{
	Widths w{};
	int k = 0;
	for (std::size_t i = 0; i < code.size(); ++i) {
		++w[k];
		if (i + 1 < code.size() && code[i + 1] != code[i])
			++k;
	}
	return w;
}

struct DigitPattern
{
	int digit;
	char parity; // 'L', 'G' or 'R'
	Widths widths;
};

const std::vector<DigitPattern>& left_patterns()
{
	static const auto table = [] {
		std::vector<DigitPattern> t;
		for (int d = 0; d < 10; ++d)
			t.push_back({d, 'L', widths_of(L_CODES[d])});
		for (int d = 0; d < 10; ++d) {
			auto w = widths_of(L_CODES[d]);
			t.push_back({d, 'G', {w[3], w[2], w[1], w[0]}});
		}
		return t;
	}();
	return table;
}

const std::vector<DigitPattern>& right_patterns()
{
	static const auto table = [] {
		std::vector<DigitPattern> t;
		for (int d = 0; d < 10; ++d)
			t.push_back({d, 'R', widths_of(L_CODES[d])});
		return t;
	}();
	return table;
}

void append_code(Bits& bits, std::string_view code)
{
	for (char c : code)
		bits.push_back(c == '1' ? 1 : 0);
}

std::string l_code(int d)
{
	return std::string(L_CODES[d]);
}

std::string r_code(int d)
{
	std::string r(L_CODES[d]);
	for (auto& c : r)
		c = c == '1' ? '0' : '1';
	return r;
}

std::string g_code(int d)
{
	auto r = r_code(d);
	return {r.rbegin(), r.rend()};
}

// Picks the pattern with minimum L1 distance after scaling the four runs to a 7-module window.
// Distances are compared as integers (both sides multiplied by the run sum), so ties are exact.
const DigitPattern& classify(std::span<const int> runs, const std::vector<DigitPattern>& candidates)
{
	long sum = std::accumulate(runs.begin(), runs.end(), 0L);
	long best = std::numeric_limits<long>::max();
	const DigitPattern* match = nullptr;
	bool tie = false;
	for (const auto& p : candidates) {
		long dist = 0;
		for (int i = 0; i < 4; ++i)
			dist += std::labs(DIGIT_MODULES * static_cast<long>(runs[i]) - p.widths[i] * sum);
		if (dist < best) {
			best = dist;
			match = &p;
			tie = false;
		} else if (dist == best) {
			tie = true;
		}
	}
	if (tie)
		throw Error(ErrorCode::AmbiguousDigit, "digit runs match two patterns equally well");
	return *match;
}

struct Geometry
{
	Symbology symbology;
	int runs;
	int modules;
	int digits_per_half;
};

constexpr std::array<Geometry, 2> GEOMETRIES = {{
	{Symbology::EAN13, 59, 95, 6},
	{Symbology::EAN8, 43, 67, 4},
}};

bool is_module_wide(int run, double module)
{
	return run >= 0.5 * module && run <= 1.5 * module;
}

// Guard and quiet-zone test for a symbol of the given geometry starting at run `start`.
std::optional<double> fits(const std::vector<int>& runs, std::size_t start, const Geometry& g)
{
	std::size_t end = start + g.runs;
	if (end > runs.size())
		return std::nullopt;

	long span = std::accumulate(runs.begin() + start, runs.begin() + end, 0L);
	double module = static_cast<double>(span) / g.modules;

	// A sequence edge counts as quiet zone: nothing observed there.
	if (start > 0 && runs[start - 1] < QUIET_ZONE_MODULES * module)
		return std::nullopt;
	if (end < runs.size() && runs[end] < QUIET_ZONE_MODULES * module)
		return std::nullopt;

	std::size_t center = start + 3 + 4 * g.digits_per_half;
	for (std::size_t i : {start, start + 1, start + 2, end - 3, end - 2, end - 1})
		if (!is_module_wide(runs[i], module))
			return std::nullopt;
	for (std::size_t i = center; i < center + 5; ++i)
		if (!is_module_wide(runs[i], module))
			return std::nullopt;
	return module;
}

Gtin decode_symbol(const std::vector<int>& runs, std::size_t start, const Geometry& g, const DecodeOptions& options)
{
	std::string digits;
	std::string parity;
	std::span<const int> all(runs);

	std::size_t pos = start + 3;
	for (int i = 0; i < g.digits_per_half; ++i, pos += 4) {
		const auto& p = classify(all.subspan(pos, 4), left_patterns());
		digits.push_back(static_cast<char>('0' + p.digit));
		parity.push_back(p.parity);
	}
	pos += 5;
	for (int i = 0; i < g.digits_per_half; ++i, pos += 4)
		digits.push_back(static_cast<char>('0' + classify(all.subspan(pos, 4), right_patterns()).digit));

	if (g.symbology == Symbology::EAN8) {
		if (parity != "LLLL")
			throw Error(ErrorCode::ParityPatternUnknown, "EAN-8 left half must use odd parity only");
		return Gtin(digits, Symbology::EAN8);
	}

	int first = -1;
	for (int d = 0; d < 10; ++d)
		if (FIRST_DIGIT_PARITY[d] == parity)
			first = d;
	if (first < 0)
		throw Error(ErrorCode::ParityPatternUnknown, "left-half parity " + parity + " matches no leading digit");

	digits.insert(digits.begin(), static_cast<char>('0' + first));
	if (options.prefer_upca && first == 0)
		return Gtin(std::string_view(digits).substr(1), Symbology::UPCA);
	return Gtin(digits, Symbology::EAN13);
}

} // namespace

Bits encode(const Gtin& gtin, Symbology symbology)
{
	const auto& d = gtin.digits13();
	auto digit = [&](std::size_t i) { return d[i] - '0'; };
	Bits bits;

	switch (symbology) {
	case Symbology::EAN13: {
		auto parity = FIRST_DIGIT_PARITY[digit(0)];
		append_code(bits, START_END_GUARD);
		for (std::size_t i = 1; i <= 6; ++i)
			append_code(bits, parity[i - 1] == 'L' ? l_code(digit(i)) : g_code(digit(i)));
		append_code(bits, CENTER_GUARD);
		for (std::size_t i = 7; i <= 12; ++i)
			append_code(bits, r_code(digit(i)));
		append_code(bits, START_END_GUARD);
		return bits;
	}
	case Symbology::EAN8:
		if (d.compare(0, 5, "00000") != 0)
			throw Error(ErrorCode::UnsupportedSymbology, d + " does not fit in EAN-8");
		append_code(bits, START_END_GUARD);
		for (std::size_t i = 5; i <= 8; ++i)
			append_code(bits, l_code(digit(i)));
		append_code(bits, CENTER_GUARD);
		for (std::size_t i = 9; i <= 12; ++i)
			append_code(bits, r_code(digit(i)));
		append_code(bits, START_END_GUARD);
		return bits;
	default:
		throw Error(ErrorCode::UnsupportedSymbology,
					"cannot draw " + std::string(to_string(symbology)) + "; only EAN13 and EAN8 are encodable");
	}
}

ModuleRuns run_lengths(std::span<const std::uint8_t> bits)
{
	ModuleRuns out;
	if (bits.empty())
		return out;
	out.first_is_bar = bits.front() != 0;
	bool current = out.first_is_bar;
	int length = 0;
	for (auto b : bits) {
		if ((b != 0) == current) {
			++length;
		} else {
			out.runs.push_back(length);
			current = !current;
			length = 1;
		}
	}
	out.runs.push_back(length);
	return out;
}

Gtin decode_runs(const ModuleRuns& input, const DecodeOptions& options)
{
	const auto& runs = input.runs;
	if (runs.empty())
		throw Error(ErrorCode::NoGuardFound, "empty scan");
	for (int r : runs)
		if (r <= 0)
			throw Error(ErrorCode::NoGuardFound, "run lengths must be positive");

	std::optional<Error> first_failure;
	for (std::size_t start = input.first_is_bar ? 0 : 1; start < runs.size(); start += 2) {
		for (const auto& g : GEOMETRIES) {
			if (!fits(runs, start, g))
				continue;
			try {
				return decode_symbol(runs, start, g, options);
			} catch (const Error& e) {
				if (!first_failure)
					first_failure = e;
			}
		}
	}
	if (first_failure)
		throw *first_failure;
	throw Error(ErrorCode::NoGuardFound, "no EAN-13 or EAN-8 guard pattern found");
}

} // namespace healthwise::barcode
