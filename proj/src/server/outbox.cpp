/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/server/outbox.h"

#include "healthwise/error.h"
#include "healthwise/wire.h"

#include <curl/curl.h>
#include <spdlog/spdlog.h>

namespace healthwise::server {

namespace {

struct Payload
{
	std::string data;
	std::size_t offset = 0;
};

std::size_t read_payload(char* buffer, std::size_t size, std::size_t count, void* user)
{
	auto* p = static_cast<Payload*>(user);
	std::size_t n = std::min(size * count, p->data.size() - p->offset);
	std::copy_n(p->data.data() + p->offset, n, buffer);
	p->offset += n;
	return n;
}

void init_curl_once()
{
	static const bool done = [] { return curl_global_init(CURL_GLOBAL_DEFAULT) == CURLE_OK; }();
	(void)done;
}

} // namespace

nlohmann::json to_json(const NotificationRecord& r)
{
	return {{"to", r.to}, {"subject", r.subject}, {"body", r.body}, {"created_at", r.created_at}};
}

NotificationRecord notification_from_json(const nlohmann::json& j)
{
	try {
		return {j.at("to").get<std::string>(), j.at("subject").get<std::string>(), j.at("body").get<std::string>(),
				j.at("created_at").get<std::string>()};
	} catch (const nlohmann::json::exception& e) {
		throw Error(ErrorCode::StorageFailure, std::string("bad outbox record: ") + e.what());
	}
}

NotificationRecord compose_notification(const energy::UserProfile& profile, const ledger::ConsumptionEntry& entry,
										const catalog::ProductRecord& product, Instant now)
{
	NotificationRecord r;
	r.to = profile.email;
	r.subject = "Consumed: " + product.name + " (" + std::string(ledger::to_string(entry.meal)) + ")";
	r.body = "Hello " + profile.name + ",\n\n" + "You consumed " + wire::format_number(entry.quantity_g) + " g of "
			 + product.name + " (" + product.gtin13 + ") for " + std::string(ledger::to_string(entry.meal)) + " on "
			 + entry.date + ".\n" + "Energy: " + std::to_string(entry.energy_kcal) + " kCal\n"
			 + "Time of consumption: " + entry.timestamp + "\n";
	r.created_at = iso_timestamp(now);
	return r;
}

Outbox::Outbox(std::filesystem::path file, std::optional<SmtpSettings> smtp)
	: _file(std::move(file)), _smtp(std::move(smtp))
{}

NotificationRecord Outbox::notify(const energy::UserProfile& profile, const ledger::ConsumptionEntry& entry,
								  const catalog::ProductRecord& product, Instant now)
{
	auto record = compose_notification(profile, entry, product, now);
	{
		std::lock_guard lock(_mutex);
		_file.append(to_json(record));
	}
	if (_smtp && !deliver(record))
		spdlog::warn("mail to {} not delivered; it remains in the outbox", record.to);
	return record;
}

std::vector<NotificationRecord> Outbox::records() const
{
	std::lock_guard lock(_mutex);
	std::vector<NotificationRecord> out;
	for (const auto& j : _file.replay())
		out.push_back(notification_from_json(j));
	return out;
}

bool Outbox::deliver(const NotificationRecord& record) const
{
	if (!_smtp)
		return false;
	// Header values go out verbatim, so a line break would start a new header.
	auto breaks_line = [](const std::string& s) { return s.find_first_of("\r\n") != std::string::npos; };
	if (breaks_line(record.to) || breaks_line(record.subject) || breaks_line(_smtp->from)) {
		spdlog::warn("refusing to mail {}: line break in a header value", record.to);
		return false;
	}
	init_curl_once();
	CURL* curl = curl_easy_init();
	if (!curl)
		return false;

	Payload payload;
	payload.data = "To: " + record.to + "\r\nFrom: " + _smtp->from + "\r\nSubject: " + record.subject + "\r\n\r\n"
				   + record.body;
	auto url = "smtp://" + _smtp->host + ":" + std::to_string(_smtp->port);
	curl_slist* recipients = curl_slist_append(nullptr, record.to.c_str());

	curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
	curl_easy_setopt(curl, CURLOPT_MAIL_FROM, _smtp->from.c_str());
	curl_easy_setopt(curl, CURLOPT_MAIL_RCPT, recipients);
	curl_easy_setopt(curl, CURLOPT_READFUNCTION, read_payload);
	curl_easy_setopt(curl, CURLOPT_READDATA, &payload);
	curl_easy_setopt(curl, CURLOPT_UPLOAD, 1L);
	curl_easy_setopt(curl, CURLOPT_CONNECTTIMEOUT, 5L);
	curl_easy_setopt(curl, CURLOPT_TIMEOUT, 15L);
	curl_easy_setopt(curl, CURLOPT_NOSIGNAL, 1L);

	CURLcode rc = curl_easy_perform(curl);
	if (rc != CURLE_OK)
		spdlog::warn("SMTP delivery to {} via {} failed: {}", record.to, url, curl_easy_strerror(rc));

	curl_slist_free_all(recipients);
	curl_easy_cleanup(curl);
	return rc == CURLE_OK;
}

} // namespace healthwise::server
