/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "healthwise/server/service.h"

#include <memory>
#include <string>

namespace healthwise::server {

/**
 * HTTP binding for a Service: POST /soap for the XML protocol, the /api routes for the
 * JSON facade. Requests are served on httplib's worker pool.
 */
class HttpServer
{
public:
	explicit HttpServer(Service& service);
	~HttpServer();

	HttpServer(const HttpServer&) = delete;
	HttpServer& operator=(const HttpServer&) = delete;

	// Port 0 picks an ephemeral port. Returns the bound port; InternalError when binding fails.
	int bind(const std::string& host, int port);

	// Blocks until stop().
	void listen();

	// listen() on a background thread; returns once the server accepts connections.
	void start_background();

	void stop();

private:
	struct Impl;
	std::unique_ptr<Impl> _impl;
};

} // namespace healthwise::server
