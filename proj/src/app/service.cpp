#include "aquanim/app/service.hpp"

#include <iostream>

#include "httplib.h"
#include "json.hpp"

#include "aquanim/app/spec_doc.hpp"
#include "aquanim/error.hpp"
#include "aquanim/render.hpp"

namespace aquanim::app {

namespace {

HttpReply error_reply(int status, const std::string& code, const std::string& detail) {
    return {status, nlohmann::json{{"error", code}, {"detail", detail}}.dump() + "\n"};
}

}  // namespace

HttpReply handle_keyframes(const std::string& body, const ServiceConfig& cfg) {
    if (body.size() > cfg.max_body) {
        return error_reply(413, "PayloadTooLarge", "request bodies are limited to 1 MiB");
    }
    try {
        const auto doc = parse_document(body);
        const auto planned = plan_document(doc, DatasetPolicy{cfg.data_dir, true}, environment_palette());
        const auto frames = sample_frames(planned.script, planned.render);
        return {200, emit_keyframes_doc(frames, planned.render)};
    } catch (const SpecError& e) {
        return error_reply(400, e.code(), e.detail());
    } catch (const Error& e) {
        return error_reply(422, std::string(to_string(e.code())), e.detail());
    }
}

HttpReply handle_transitions() { return {200, transition_catalog().dump() + "\n"}; }

HttpReply handle_health() { return {200, "{\"status\":\"ok\"}\n"}; }

bool serve(const ServiceConfig& cfg) {
    httplib::Server server;
    server.set_payload_max_length(cfg.max_body);
    auto send = [](httplib::Response& res, const HttpReply& reply) {
        res.status = reply.status;
        res.set_content(reply.body, reply.content_type);
    };
    server.Post("/api/v1/keyframes", [&](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_keyframes(req.body, cfg));
    });
    server.Get("/api/v1/transitions",
               [&](const httplib::Request&, httplib::Response& res) { send(res, handle_transitions()); });
    server.Get("/api/v1/health",
               [&](const httplib::Request&, httplib::Response& res) { send(res, handle_health()); });
    if (!server.bind_to_port(cfg.bind, cfg.port)) return false;
    std::cerr << "listening on " << cfg.bind << ':' << cfg.port << '\n';
    return server.listen_after_bind();
}

}  // namespace aquanim::app
