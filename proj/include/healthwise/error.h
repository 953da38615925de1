/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace healthwise {

// Closed error vocabulary. Every failure the library or the server can raise
// carries one of these codes, and each code doubles as a wire Fault code.
enum class ErrorCode
{
	NonDigitInput,
	UnsupportedLength,
	InvalidCheckDigit,
	InvalidNumberSystem,
	NotCompressible,
	UnsupportedSymbology,
	FlatScanline,
	NoGuardFound,
	AmbiguousDigit,
	ParityPatternUnknown,
	MalformedImage,
	NoTableRow,
	ValidationError,
	InvalidKey,
	InvariantViolation,
	ProductNotFound,
	NonPositiveQuantity,
	StorageFailure,
	EmptyChart,
	MalformedXml,
	UnknownOperation,
	MissingField,
	NoSuchUser,
	InternalError,
};

inline constexpr std::array kAllErrorCodes = {
	ErrorCode::NonDigitInput,      ErrorCode::UnsupportedLength,   ErrorCode::InvalidCheckDigit,
	ErrorCode::InvalidNumberSystem, ErrorCode::NotCompressible,    ErrorCode::UnsupportedSymbology,
	ErrorCode::FlatScanline,       ErrorCode::NoGuardFound,        ErrorCode::AmbiguousDigit,
	ErrorCode::ParityPatternUnknown, ErrorCode::MalformedImage,    ErrorCode::NoTableRow,
	ErrorCode::ValidationError,    ErrorCode::InvalidKey,          ErrorCode::InvariantViolation,
	ErrorCode::ProductNotFound,    ErrorCode::NonPositiveQuantity, ErrorCode::StorageFailure,
	ErrorCode::EmptyChart,         ErrorCode::MalformedXml,        ErrorCode::UnknownOperation,
	ErrorCode::MissingField,       ErrorCode::NoSuchUser,          ErrorCode::InternalError,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> parse_error_code(std::string_view token);

class Error : public std::runtime_error
{
public:
	Error(ErrorCode code, const std::string& message) : std::runtime_error(message), _code(code) {}

	ErrorCode code() const noexcept { return _code; }

private:
	ErrorCode _code;
};

} // namespace healthwise
