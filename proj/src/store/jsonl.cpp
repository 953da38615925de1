/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/jsonl.h"

#include "healthwise/error.h"

#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

namespace healthwise::store {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void storage_failure(const fs::path& path, const std::string& what)
{
	throw Error(ErrorCode::StorageFailure, path.string() + ": " + what);
}

} // namespace

JsonLines::JsonLines(fs::path path) : _path(std::move(path)) {}

std::vector<nlohmann::json> JsonLines::replay() const
{
	std::vector<nlohmann::json> records;
	std::error_code ec;
	if (!fs::exists(_path, ec))
		return records;

	std::ifstream in(_path, std::ios::binary);
	if (!in)
		storage_failure(_path, "cannot open for reading");
	std::stringstream buffer;
	buffer << in.rdbuf();
	const std::string text = buffer.str();

	std::size_t pos = 0;
	std::size_t line_no = 0;
	while (pos < text.size()) {
		auto nl = text.find('\n', pos);
		bool last = nl == std::string::npos || nl + 1 == text.size();
		auto line = std::string_view(text).substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
		++line_no;

		if (!line.empty()) {
			auto record = nlohmann::json::parse(line, nullptr, false);
			// An unterminated final line is a torn append even if it happens to parse.
			bool torn = record.is_discarded() || nl == std::string::npos;
			if (torn && last) {
				spdlog::warn("{}: truncating corrupt trailing line {}", _path.string(), line_no);
				fs::resize_file(_path, pos, ec);
				if (ec)
					storage_failure(_path, "cannot truncate corrupt tail: " + ec.message());
				break;
			}
			if (record.is_discarded())
				storage_failure(_path, "corrupt record at line " + std::to_string(line_no));
			records.push_back(std::move(record));
		}
		if (nl == std::string::npos)
			break;
		pos = nl + 1;
	}
	return records;
}

void JsonLines::append(const nlohmann::json& record) const
{
	std::ofstream out(_path, std::ios::binary | std::ios::app);
	if (!out)
		storage_failure(_path, "cannot open for appending");
	out << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
	out.flush();
	if (!out)
		storage_failure(_path, "write failed");
}

void JsonLines::rewrite(const std::vector<nlohmann::json>& records) const
{
	auto tmp = _path;
	tmp += ".tmp";
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if (!out)
			storage_failure(tmp, "cannot open for writing");
		for (const auto& r : records)
			out << r.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
		out.flush();
		if (!out)
			storage_failure(tmp, "write failed");
	}
	std::error_code ec;
	fs::rename(tmp, _path, ec);
	if (ec)
		storage_failure(_path, "cannot replace: " + ec.message());
}

} // namespace healthwise::store
