/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/error.h"

namespace healthwise {

std::string_view to_string(ErrorCode code)
{
	switch (code) {
	case ErrorCode::NonDigitInput: return "NonDigitInput";
	case ErrorCode::UnsupportedLength: return "UnsupportedLength";
	case ErrorCode::InvalidCheckDigit: return "InvalidCheckDigit";
	case ErrorCode::InvalidNumberSystem: return "InvalidNumberSystem";
	case ErrorCode::NotCompressible: return "NotCompressible";
	case ErrorCode::UnsupportedSymbology: return "UnsupportedSymbology";
	case ErrorCode::FlatScanline: return "FlatScanline";
	case ErrorCode::NoGuardFound: return "NoGuardFound";
	case ErrorCode::AmbiguousDigit: return "AmbiguousDigit";
	case ErrorCode::ParityPatternUnknown: return "ParityPatternUnknown";
	case ErrorCode::MalformedImage: return "MalformedImage";
	case ErrorCode::NoTableRow: return "NoTableRow";
	case ErrorCode::ValidationError: return "ValidationError";
	case ErrorCode::InvalidKey: return "InvalidKey";
	case ErrorCode::InvariantViolation: return "InvariantViolation";
	case ErrorCode::ProductNotFound: return "ProductNotFound";
	case ErrorCode::NonPositiveQuantity: return "NonPositiveQuantity";
	case ErrorCode::StorageFailure: return "StorageFailure";
	case ErrorCode::EmptyChart: return "EmptyChart";
	case ErrorCode::MalformedXml: return "MalformedXml";
	case ErrorCode::UnknownOperation: return "UnknownOperation";
	case ErrorCode::MissingField: return "MissingField";
	case ErrorCode::NoSuchUser: return "NoSuchUser";
	case ErrorCode::InternalError: return "InternalError";
	}
	return "InternalError";
}

std::optional<ErrorCode> parse_error_code(std::string_view token)
{
	for (auto code : kAllErrorCodes)
		if (to_string(code) == token)
			return code;
	return std::nullopt;
}

} // namespace healthwise
