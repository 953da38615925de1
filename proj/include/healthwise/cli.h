/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/error.h"
#include "healthwise/wire.h"

#include <iosfwd>
#include <string>
#include <vector>

namespace healthwise::cli {

enum ExitCode
{
	kSuccess = 0,
	kFault = 1,
	kUsage = 2,
};

/// XML protocol client for POST /soap. A Fault in the response is rethrown as Error.
class SoapClient
{
public:
	// http://host[:port]; ValidationError when the URL cannot be used.
	explicit SoapClient(std::string url);

	const std::string& url() const noexcept { return _url; }
	wire::Node call(std::string_view op, const wire::Fields& fields) const;

private:
	std::string _url;
};

// args[0] is the program name. Color is used only when out is a terminal.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace healthwise::cli
