/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/barcode.h"

#include "healthwise/error.h"

#include <algorithm>

namespace healthwise::barcode {

namespace {

bool all_digits(std::string_view s)
{
	return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void require_digits(std::string_view s)
{
	if (!all_digits(s))
		throw Error(ErrorCode::NonDigitInput, "code contains a non-digit character: '" + std::string(s) + "'");
}

std::string_view trim(std::string_view s)
{
	auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
	while (!s.empty() && is_space(s.front()))
		s.remove_prefix(1);
	while (!s.empty() && is_space(s.back()))
		s.remove_suffix(1);
	return s;
}

std::size_t expected_length(Symbology symbology)
{
	switch (symbology) {
	case Symbology::EAN13: return 13;
	case Symbology::UPCA: return 12;
	case Symbology::EAN8:
	case Symbology::UPCE: return 8;
	}
	return 0;
}

char digit_char(int d)
{
	return static_cast<char>('0' + d);
}

} // namespace

std::string_view to_string(Symbology symbology)
{
	switch (symbology) {
	case Symbology::EAN13: return "EAN13";
	case Symbology::EAN8: return "EAN8";
	case Symbology::UPCA: return "UPCA";
	case Symbology::UPCE: return "UPCE";
	}
	return "EAN13";
}

int compute_check_digit(std::string_view body)
{
	require_digits(body);
	if (body.size() != 7 && body.size() != 11 && body.size() != 12)
		throw Error(ErrorCode::UnsupportedLength,
					"check digit body must have 7, 11 or 12 digits, got " + std::to_string(body.size()));

	int sum = 0;
	int weight = 3;
	for (auto it = body.rbegin(); it != body.rend(); ++it) {
		sum += (*it - '0') * weight;
		weight = 4 - weight;
	}
	return (10 - sum % 10) % 10;
}

Gtin::Gtin(std::string_view original, Symbology symbology) : _original(original), _symbology(symbology)
{
	require_digits(original);
	if (original.size() != expected_length(symbology))
		throw Error(ErrorCode::UnsupportedLength, "unexpected length " + std::to_string(original.size()) + " for "
													  + std::string(to_string(symbology)));

	if (symbology == Symbology::UPCE) {
		_digits13 = "0" + expand_upce(original);
		return;
	}

	auto body = original.substr(0, original.size() - 1);
	if (compute_check_digit(body) != original.back() - '0')
		throw Error(ErrorCode::InvalidCheckDigit, "check digit mismatch in " + std::string(original));

	_digits13 = std::string(13 - original.size(), '0') + std::string(original);
}

Gtin validate_code(std::string_view text)
{
	auto code = trim(text);
	require_digits(code);
	switch (code.size()) {
	case 8: return Gtin(code, Symbology::EAN8);
	case 12: return Gtin(code, Symbology::UPCA);
	case 13: return Gtin(code, Symbology::EAN13);
	default:
		throw Error(ErrorCode::UnsupportedLength, "expected 8, 12 or 13 digits, got " + std::to_string(code.size()));
	}
}

Gtin validate_upce(std::string_view text)
{
	return Gtin(trim(text), Symbology::UPCE);
}

std::string expand_upce(std::string_view code8)
{
	require_digits(code8);
	if (code8.size() != 8)
		throw Error(ErrorCode::UnsupportedLength, "UPC-E code must have 8 digits");
	if (code8[0] != '0' && code8[0] != '1')
		throw Error(ErrorCode::InvalidNumberSystem, "UPC-E number system must be 0 or 1");

	auto d = code8.substr(1, 6);
	std::string body(1, code8[0]);
	switch (d[5]) {
	case '0':
	case '1':
	case '2':
		body.append(d.substr(0, 2)).push_back(d[5]);
		body.append("0000").append(d.substr(2, 3));
		break;
	case '3':
		body.append(d.substr(0, 3)).append("00000").append(d.substr(3, 2));
		break;
	case '4':
		body.append(d.substr(0, 4)).append("00000").push_back(d[4]);
		break;
	default:
		body.append(d.substr(0, 5)).append("0000").push_back(d[5]);
		break;
	}

	int check = compute_check_digit(body);
	if (check != code8[7] - '0')
		throw Error(ErrorCode::InvalidCheckDigit, "UPC-E check digit does not match its expansion");
	return body + digit_char(check);
}

std::string compress_to_upce(std::string_view code12)
{
	require_digits(code12);
	if (code12.size() != 12)
		throw Error(ErrorCode::UnsupportedLength, "UPC-A code must have 12 digits");
	if (compute_check_digit(code12.substr(0, 11)) != code12[11] - '0')
		throw Error(ErrorCode::InvalidCheckDigit, "check digit mismatch in " + std::string(code12));
	if (code12[0] != '0' && code12[0] != '1')
		throw Error(ErrorCode::NotCompressible, "only number systems 0 and 1 have a UPC-E form");

	auto mfr = code12.substr(1, 5);
	auto item = code12.substr(6, 5);
	std::string body;
	if (mfr[2] <= '2' && mfr.substr(3) == "00" && item.substr(0, 2) == "00") {
		body.append(mfr.substr(0, 2)).append(item.substr(2, 3)).push_back(mfr[2]);
	} else if (mfr.substr(3) == "00" && item.substr(0, 3) == "000") {
		body.append(mfr.substr(0, 3)).append(item.substr(3, 2)).push_back('3');
	} else if (mfr[4] == '0' && item.substr(0, 4) == "0000") {
		body.append(mfr.substr(0, 4)).push_back(item[4]);
		body.push_back('4');
	} else if (item.substr(0, 4) == "0000" && item[4] >= '5') {
		body.append(mfr).push_back(item[4]);
	} else {
		throw Error(ErrorCode::NotCompressible, std::string(code12) + " has no zero-suppressed form");
	}
	return code12[0] + body + code12[11];
}

bool is_canonical_upce(std::string_view code8)
{
	try {
		return compress_to_upce(expand_upce(code8)) == code8;
	} catch (const Error&) {
		return false;
	}
}

} // namespace healthwise::barcode
