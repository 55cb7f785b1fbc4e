#pragma once

// Mounts SessionService on a cpp-httplib server:
//   POST /sessions
//   POST /sessions/{id}/begin
//   POST /sessions/{id}/respond
//   GET  /sessions/{id}/log
//   POST /sessions/{id}/end

#include <string>

#include "httplib.h"
#include "json.hpp"

#include "fracq/session_service.hpp"

namespace fracq {

struct HttpOptions {
    std::string cors_origin = "*";
};

namespace detail {

inline void send(httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json; charset=utf-8");
}

// Empty body parses as null. Returns false (and fills res) on malformed JSON.
inline bool parse_body(const httplib::Request& req, httplib::Response& res, nlohmann::json& out) {
    if (req.body.empty()) {
        out = nullptr;
        return true;
    }
    try {
        out = nlohmann::json::parse(req.body);
        return true;
    } catch (const nlohmann::json::parse_error& e) {
        send(res, {http_status::bad_request, {{"error", std::string("malformed JSON: ") + e.what()}}});
        return false;
    }
}

}  // namespace detail

inline void mount_routes(httplib::Server& server, SessionService& service, const HttpOptions& options = {}) {
    server.set_default_headers({{"Access-Control-Allow-Origin", options.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});

    server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        if (!detail::parse_body(req, res, body)) return;
        detail::send(res, service.create_session(body));
    });
    server.Post(R"(/sessions/([^/]+)/begin)", [&service](const httplib::Request& req, httplib::Response& res) {
        detail::send(res, service.begin_step(req.matches[1]));
    });
    server.Post(R"(/sessions/([^/]+)/respond)", [&service](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        if (!detail::parse_body(req, res, body)) return;
        detail::send(res, service.submit_response(req.matches[1], body));
    });
    server.Get(R"(/sessions/([^/]+)/log)", [&service](const httplib::Request& req, httplib::Response& res) {
        detail::send(res, service.get_log(req.matches[1]));
    });
    server.Post(R"(/sessions/([^/]+)/end)", [&service](const httplib::Request& req, httplib::Response& res) {
        nlohmann::json body;
        if (!detail::parse_body(req, res, body)) return;
        detail::send(res, service.end_session(req.matches[1], body));
    });
}

}  // namespace fracq
