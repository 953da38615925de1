/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/server/http.h"

#include "healthwise/error.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <thread>

namespace healthwise::server {

namespace {

constexpr std::size_t kMaxBody = 1 << 20;
constexpr const char* kXml = "text/xml; charset=utf-8";
constexpr const char* kJson = "application/json";

void not_allowed(const httplib::Request&, httplib::Response& res)
{
	res.status = 405;
	res.set_header("Allow", "POST");
	res.set_content("POST only\n", "text/plain");
}

} // namespace

struct HttpServer::Impl
{
	Service& service;
	httplib::Server http;
	std::thread thread;
	bool bound = false;

	explicit Impl(Service& s) : service(s) {}
};

HttpServer::HttpServer(Service& service) : _impl(std::make_unique<Impl>(service))
{
	auto& http = _impl->http;
	auto& svc = _impl->service;

	http.set_payload_max_length(kMaxBody);
	// httplib also sets SO_REUSEPORT by default, which lets a second server share a live port.
	http.set_socket_options([](socket_t sock) {
		int yes = 1;
		::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
	});
	http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

	http.Post("/soap", [&svc](const httplib::Request& req, httplib::Response& res) {
		res.set_content(svc.handle_soap(req.body), kXml);
	});
	http.Get("/soap", not_allowed);
	http.Put("/soap", not_allowed);
	http.Delete("/soap", not_allowed);
	http.Patch("/soap", not_allowed);

	auto rest = [&svc](const httplib::Request& req, httplib::Response& res) {
		std::multimap<std::string, std::string> query(req.params.begin(), req.params.end());
		auto out = svc.handle_rest(req.method, req.path, query, req.body);
		res.status = out.status;
		res.set_content(out.body, kJson);
	};
	http.Get("/api/.*", rest);
	http.Post("/api/.*", rest);
	http.Put("/api/.*", rest);
	http.Delete("/api/.*", rest);
	http.Options("/api/.*", [](const httplib::Request&, httplib::Response& res) {
		res.set_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS");
		res.set_header("Access-Control-Allow-Headers", "Content-Type");
		res.status = 204;
	});

	http.set_exception_handler([](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
		std::string what = "unknown";
		try {
			std::rethrow_exception(ep);
		} catch (const std::exception& e) {
			what = e.what();
		} catch (...) {
		}
		spdlog::error("unhandled exception on {} {}: {}", req.method, req.path, what);
		res.status = 500;
		res.set_content(R"({"error":{"code":"InternalError","message":"internal server error"}})", kJson);
	});
}

HttpServer::~HttpServer()
{
	stop();
}

int HttpServer::bind(const std::string& host, int port)
{
	auto& http = _impl->http;
	int bound = port;
	if (port == 0)
		bound = http.bind_to_any_port(host);
	else if (!http.bind_to_port(host, port))
		bound = -1;
	if (bound <= 0)
		throw Error(ErrorCode::InternalError, "cannot bind " + host + ":" + std::to_string(port));
	_impl->bound = true;
	spdlog::info("listening on {}:{}", host, bound);
	return bound;
}

void HttpServer::listen()
{
	if (!_impl->bound)
		throw Error(ErrorCode::InternalError, "listen() before bind()");
	_impl->http.listen_after_bind();
}

void HttpServer::start_background()
{
	if (!_impl->bound)
		throw Error(ErrorCode::InternalError, "start_background() before bind()");
	_impl->thread = std::thread([this] { _impl->http.listen_after_bind(); });
	_impl->http.wait_until_ready();
}

void HttpServer::stop()
{
	if (!_impl)
		return;
	_impl->http.stop();
	if (_impl->thread.joinable())
		_impl->thread.join();
}

} // namespace healthwise::server
