#pragma once

#include <filesystem>
#include <string>

namespace aquanim::app {

struct ServiceConfig {
    std::string bind = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir = ".";
    std::size_t max_body = 1 << 20;
};

struct HttpReply {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

/// POST /api/v1/keyframes without the transport.
HttpReply handle_keyframes(const std::string& body, const ServiceConfig& cfg);
HttpReply handle_transitions();
HttpReply handle_health();

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool serve(const ServiceConfig& cfg);

}  // namespace aquanim::app
