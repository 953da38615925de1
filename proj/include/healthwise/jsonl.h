/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <vector>

namespace healthwise::store {

/**
 * An append-only JSON-lines file.
 *
 * replay() reads every line back. A trailing line that does not parse (a torn
 * write) is cut off the file with a warning; a bad line anywhere else is a
 * StorageFailure, because silently skipping history would change totals.
 */
class JsonLines
{
public:
	explicit JsonLines(std::filesystem::path path);

	const std::filesystem::path& path() const noexcept { return _path; }

	std::vector<nlohmann::json> replay() const;

	// Writes one line and flushes it; StorageFailure when the file cannot be written.
	void append(const nlohmann::json& record) const;

	// Replaces the file contents atomically (temp file + rename).
	void rewrite(const std::vector<nlohmann::json>& records) const;

private:
	std::filesystem::path _path;
};

} // namespace healthwise::store
