/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace healthwise::barcode {

enum class Symbology
{
	EAN13,
	EAN8,
	UPCA,
	UPCE,
};

std::string_view to_string(Symbology symbology);

/**
 * A validated article number. The canonical form is always 13 digits (shorter
 * symbologies are zero-padded on the left) so that every symbology shares one
 * key space. Construction validates; a Gtin instance is always well-formed.
 */
class Gtin
{
public:
	// original must be 13 (EAN13), 12 (UPCA) or 8 (EAN8/UPCE) digits with a valid check digit.
	Gtin(std::string_view original, Symbology symbology);

	const std::string& digits13() const noexcept { return _digits13; }
	const std::string& original() const noexcept { return _original; }
	Symbology symbology() const noexcept { return _symbology; }

	bool operator==(const Gtin&) const = default;

private:
	std::string _digits13;
	std::string _original;
	Symbology _symbology;
};

// 1 = bar module, 0 = space module.
using Bits = std::vector<std::uint8_t>;

struct ModuleRuns
{
	std::vector<int> runs;
	bool first_is_bar = true;

	bool operator==(const ModuleRuns&) const = default;
};

// Mod-10 check digit for a 7, 11 or 12 digit body, weights 3,1,3,... from the right.
int compute_check_digit(std::string_view body);

// Trims whitespace, classifies by length (8 -> EAN8, 12 -> UPCA, 13 -> EAN13) and verifies the check digit.
Gtin validate_code(std::string_view text);

// Validates an 8-digit UPC-E code and returns it with its UPC-A canonical key.
Gtin validate_upce(std::string_view text);

std::string expand_upce(std::string_view code8);
std::string compress_to_upce(std::string_view code12);

// True when code8 is the unique zero-suppressed form of its expansion.
bool is_canonical_upce(std::string_view code8);

Bits encode(const Gtin& gtin, Symbology symbology);

ModuleRuns run_lengths(std::span<const std::uint8_t> bits);

struct DecodeOptions
{
	// Report a 0-prefixed EAN-13 as the 12-digit UPC-A it carries.
	bool prefer_upca = false;
};

Gtin decode_runs(const ModuleRuns& runs, const DecodeOptions& options = {});

/// One row of luminance samples taken across a symbol.
class Scanline
{
public:
	static constexpr std::size_t kMinWidth = 95;

	explicit Scanline(std::vector<std::uint8_t> samples);

	std::span<const std::uint8_t> samples() const noexcept { return _samples; }
	std::size_t width() const noexcept { return _samples.size(); }

private:
	std::vector<std::uint8_t> _samples;
};

inline constexpr int kMinContrast = 32;

// Midpoint threshold: samples darker than (min + max) / 2 become bars.
Bits binarize(std::span<const std::uint8_t> samples);
Bits binarize(const Scanline& scanline);

struct GrayImage
{
	int width = 0;
	int height = 0;
	std::vector<std::uint8_t> pixels; // row-major, 0 = black

	std::span<const std::uint8_t> row(int y) const
	{
		return {pixels.data() + static_cast<std::size_t>(y) * width, static_cast<std::size_t>(width)};
	}
};

GrayImage parse_pgm(std::string_view bytes);
std::string write_pgm(const GrayImage& image);

// Draws bits as black/white columns, px_per_module wide, with quiet_modules of white on each side.
GrayImage render(const Bits& bits, int px_per_module, int height, int quiet_modules = 10);

// Scans the middle row, then the rows at 25% and 75% height.
Gtin decode_image(std::string_view pgm_bytes, const DecodeOptions& options = {});

} // namespace healthwise::barcode
