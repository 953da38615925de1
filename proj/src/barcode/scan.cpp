/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/barcode.h"

#include "healthwise/error.h"

#include <algorithm>
#include <optional>

namespace healthwise::barcode {

namespace {

class PgmReader
{
public:
	explicit PgmReader(std::string_view bytes) : _bytes(bytes) {}

	void skip_separators()
	{
		while (_pos < _bytes.size()) {
			char c = _bytes[_pos];
			if (c == '#') {
				while (_pos < _bytes.size() && _bytes[_pos] != '\n')
					++_pos;
			} else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
				++_pos;
			} else {
				break;
			}
		}
	}

	long number()
	{
		skip_separators();
		long value = 0;
		std::size_t begin = _pos;
		while (_pos < _bytes.size() && _bytes[_pos] >= '0' && _bytes[_pos] <= '9') {
			value = value * 10 + (_bytes[_pos] - '0');
			if (value > 100'000'000)
				fail("header value too large");
			++_pos;
		}
		if (_pos == begin)
			fail("expected a number in the header");
		return value;
	}

	void single_whitespace()
	{
		if (_pos >= _bytes.size() || !(_bytes[_pos] == ' ' || _bytes[_pos] == '\t' || _bytes[_pos] == '\n' || _bytes[_pos] == '\r'))
			fail("missing whitespace after maxval");
		++_pos;
	}

	std::string_view rest() const { return _bytes.substr(_pos); }

	[[noreturn]] static void fail(const std::string& what) { throw Error(ErrorCode::MalformedImage, "PGM: " + what); }

private:
	std::string_view _bytes;
	std::size_t _pos = 0;
};

} // namespace

Scanline::Scanline(std::vector<std::uint8_t> samples) : _samples(std::move(samples))
{
	if (_samples.size() < kMinWidth)
		throw Error(ErrorCode::MalformedImage,
					"scanline has " + std::to_string(_samples.size()) + " samples, need at least 95");
}

Bits binarize(std::span<const std::uint8_t> samples)
{
	if (samples.empty())
		throw Error(ErrorCode::FlatScanline, "empty scanline");
	auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
	if (*hi - *lo < kMinContrast)
		throw Error(ErrorCode::FlatScanline, "scanline contrast " + std::to_string(*hi - *lo) + " is below 32");

	double threshold = (*lo + *hi) / 2.0;
	Bits bits;
	bits.reserve(samples.size());
	for (auto s : samples)
		bits.push_back(s < threshold ? 1 : 0);
	return bits;
}

Bits binarize(const Scanline& scanline)
{
	return binarize(scanline.samples());
}

GrayImage parse_pgm(std::string_view bytes)
{
	if (bytes.size() < 2 || bytes.substr(0, 2) != "P5")
		PgmReader::fail("not a binary graymap (magic P5)");

	PgmReader reader(bytes.substr(2));
	GrayImage image;
	image.width = static_cast<int>(reader.number());
	image.height = static_cast<int>(reader.number());
	long maxval = reader.number();
	reader.single_whitespace();

	if (image.width <= 0 || image.height <= 0)
		PgmReader::fail("empty image");
	if (maxval != 255)
		PgmReader::fail("maxval must be 255");

	auto data = reader.rest();
	auto needed = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
	if (data.size() < needed)
		PgmReader::fail("pixel data truncated");
	image.pixels.assign(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(needed));
	return image;
}

std::string write_pgm(const GrayImage& image)
{
	std::string out = "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
	out.append(image.pixels.begin(), image.pixels.end());
	return out;
}

GrayImage render(const Bits& bits, int px_per_module, int height, int quiet_modules)
{
	GrayImage image;
	image.width = static_cast<int>(bits.size() + 2 * quiet_modules) * px_per_module;
	image.height = height;

	std::vector<std::uint8_t> row(static_cast<std::size_t>(image.width), 255);
	for (std::size_t m = 0; m < bits.size(); ++m)
		if (bits[m])
			std::fill_n(row.begin() + (quiet_modules + static_cast<long>(m)) * px_per_module, px_per_module, 0);

	image.pixels.reserve(row.size() * static_cast<std::size_t>(height));
	for (int y = 0; y < height; ++y)
		image.pixels.insert(image.pixels.end(), row.begin(), row.end());
	return image;
}

Gtin decode_image(std::string_view pgm_bytes, const DecodeOptions& options)
{
	auto image = parse_pgm(pgm_bytes);
	if (static_cast<std::size_t>(image.width) < Scanline::kMinWidth)
		PgmReader::fail("image narrower than 95 pixels");

	std::optional<Error> last;
	for (int y : {image.height / 2, image.height / 4, (3 * image.height) / 4}) {
		auto row = image.row(y);
		try {
			Scanline line({row.begin(), row.end()});
			return decode_runs(run_lengths(binarize(line)), options);
		} catch (const Error& e) {
			last = e;
		}
	}
	throw *last;
}

} // namespace healthwise::barcode
