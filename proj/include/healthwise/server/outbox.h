/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/catalog.h"
#include "healthwise/energy.h"
#include "healthwise/jsonl.h"
#include "healthwise/ledger.h"
#include "healthwise/server/config.h"

#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace healthwise::server {

struct NotificationRecord
{
	std::string to;
	std::string subject;
	std::string body;
	std::string created_at;

	bool operator==(const NotificationRecord&) const = default;
};

nlohmann::json to_json(const NotificationRecord& record);
NotificationRecord notification_from_json(const nlohmann::json& j);

NotificationRecord compose_notification(const energy::UserProfile& profile, const ledger::ConsumptionEntry& entry,
										const catalog::ProductRecord& product, Instant now);

/**
 * Consumption mail. The outbox file is the record of what was sent; when SMTP
 * is configured, delivery is attempted after the append and a delivery failure
 * is only logged.
 */
class Outbox
{
public:
	Outbox(std::filesystem::path file, std::optional<SmtpSettings> smtp = std::nullopt);

	// StorageFailure when the outbox cannot be appended to.
	NotificationRecord notify(const energy::UserProfile& profile, const ledger::ConsumptionEntry& entry,
							  const catalog::ProductRecord& product, Instant now);

	std::vector<NotificationRecord> records() const;

	// Exposed for tests; false on any transport error.
	bool deliver(const NotificationRecord& record) const;

private:
	store::JsonLines _file;
	std::optional<SmtpSettings> _smtp;
	mutable std::mutex _mutex;
};

} // namespace healthwise::server
