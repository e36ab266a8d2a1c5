#include "twinmarket/agents/chat_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::agents {

json messages_to_json(const std::vector<ChatMessage>& messages) {
    json arr = json::array();
    for (const auto& m : messages) arr.push_back({{"role", m.role}, {"content", m.content}});
    return arr;
}

namespace {

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

HttpChatClient::HttpChatClient(ChatSettings settings) : settings_(std::move(settings)) {
    const char* key = std::getenv(settings_.api_key_env.c_str());
    if (!key || !*key) throw ConfigError("environment variable " + settings_.api_key_env + " is not set");
    api_key_ = key;
    const auto scheme_end = settings_.endpoint.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("endpoint needs a scheme: " + settings_.endpoint);
    const auto path_start = settings_.endpoint.find('/', scheme_end + 3);
    base_ = settings_.endpoint.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : settings_.endpoint.substr(path_start);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (settings_.endpoint.rfind("https", 0) == 0) throw ConfigError("built without TLS support");
#endif
}

json HttpChatClient::request_body(const std::vector<ChatMessage>& messages) const {
    return {{"model", settings_.model}, {"temperature", settings_.temperature}, {"messages", messages_to_json(messages)}};
}

std::string HttpChatClient::complete(const std::vector<ChatMessage>& messages) {
    if (settings_.min_interval_seconds > 0.0) {
        std::lock_guard lock(mu_);
        const double wait = last_request_ + settings_.min_interval_seconds - now_seconds();
        if (wait > 0.0) std::this_thread::sleep_for(std::chrono::duration<double>(wait));
        last_request_ = now_seconds();
    }
    const std::string body = request_body(messages).dump();
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= settings_.retries; ++attempt) {
        httplib::Client cli(base_);
        cli.set_connection_timeout(settings_.timeout_seconds, 0);
        cli.set_read_timeout(settings_.timeout_seconds, 0);
        cli.set_bearer_token_auth(api_key_);
        auto res = cli.Post(path_, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
        } else if (res->status != 200) {
            last_error = "HTTP " + std::to_string(res->status);
        } else {
            try {
                const json j = json::parse(res->body);
                return j.at("choices").at(0).at("message").at("content").get<std::string>();
            } catch (const json::exception& e) {
                last_error = std::string("unreadable response: ") + e.what();
            }
        }
        if (attempt < settings_.retries) std::this_thread::sleep_for(std::chrono::milliseconds(500 << attempt));
    }
    throw ServiceUnavailable("chat service: " + last_error);
}

ScriptedChatClient::ScriptedChatClient(std::vector<std::string> responses) : responses_(std::move(responses)) {}

std::string ScriptedChatClient::complete(const std::vector<ChatMessage>& messages) {
    std::lock_guard lock(mu_);
    requests_.push_back(messages);
    if (next_ >= responses_.size()) throw ServiceUnavailable("scripted responses exhausted");
    return responses_[next_++];
}

TranscriptChatClient::TranscriptChatClient(ChatClientPtr inner, const std::filesystem::path& path)
    : inner_(std::move(inner)), out_(path, std::ios::app) {
    if (!out_) throw ConfigError("cannot open transcript " + path.string());
}

std::string TranscriptChatClient::complete(const std::vector<ChatMessage>& messages) {
    std::string response;
    std::string error;
    try {
        response = inner_->complete(messages);
    } catch (const ServiceUnavailable& e) {
        error = e.what();
    }
    {
        std::lock_guard lock(mu_);
        json rec{{"request", messages_to_json(messages)}};
        if (error.empty()) {
            rec["response"] = response;
        } else {
            rec["error"] = error;
        }
        out_ << rec.dump() << '\n';
        out_.flush();
    }
    if (!error.empty()) throw ServiceUnavailable(error);
    return response;
}

ReplayChatClient::ReplayChatClient(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open transcript " + path.string());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        entries_.emplace_back(j.at("request"), j.contains("response") ? j.at("response").get<std::string>() : "");
    }
}

std::string ReplayChatClient::complete(const std::vector<ChatMessage>& messages) {
    std::lock_guard lock(mu_);
    if (next_ >= entries_.size()) throw ServiceUnavailable("transcript exhausted");
    const auto& [req, resp] = entries_[next_++];
    if (req != messages_to_json(messages)) throw SchemaViolation("request differs from transcript");
    return resp;
}

}  // namespace twinmarket::agents
