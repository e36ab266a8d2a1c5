#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twinmarket/common/json.hpp"

namespace twinmarket::agents {

struct ChatMessage {
    std::string role;  // system | user | assistant
    std::string content;

    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatSettings {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4o";
    double temperature = 1.3;
    int timeout_seconds = 60;
    int retries = 2;
    /// Name of the environment variable holding the bearer token.
    std::string api_key_env = "TWINMARKET_API_KEY";
    /// Minimum spacing between requests; 0 disables the limit.
    double min_interval_seconds = 0.0;
};

/// Chat-completion backend. Implementations must be safe to call from several threads.
class ChatClient {
public:
    virtual ~ChatClient() = default;
    /// Returns the assistant text. Throws ServiceUnavailable.
    virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

using ChatClientPtr = std::shared_ptr<ChatClient>;

/// OpenAI-compatible HTTP(S) endpoint.
class HttpChatClient : public ChatClient {
public:
    /// Reads the API key from the configured environment variable; throws ConfigError if unset.
    explicit HttpChatClient(ChatSettings settings);
    std::string complete(const std::vector<ChatMessage>& messages) override;

    /// Request body as sent, for logging and tests.
    [[nodiscard]] json request_body(const std::vector<ChatMessage>& messages) const;

private:
    ChatSettings settings_;
    std::string api_key_;
    std::string base_;  // scheme://host[:port]
    std::string path_;
    std::mutex mu_;
    double last_request_ = -1e300;
};

/// Returns canned responses in order; throws ServiceUnavailable when exhausted.
class ScriptedChatClient : public ChatClient {
public:
    explicit ScriptedChatClient(std::vector<std::string> responses);
    std::string complete(const std::vector<ChatMessage>& messages) override;

    [[nodiscard]] const std::vector<std::vector<ChatMessage>>& requests() const { return requests_; }
    [[nodiscard]] std::size_t remaining() const { return responses_.size() - next_; }

private:
    std::vector<std::string> responses_;
    std::size_t next_ = 0;
    std::vector<std::vector<ChatMessage>> requests_;
    std::mutex mu_;
};

/// Writes every request and response verbatim as one JSON line, then forwards.
class TranscriptChatClient : public ChatClient {
public:
    TranscriptChatClient(ChatClientPtr inner, const std::filesystem::path& path);
    std::string complete(const std::vector<ChatMessage>& messages) override;

private:
    ChatClientPtr inner_;
    std::ofstream out_;
    std::mutex mu_;
};

/// Serves responses from a transcript written by TranscriptChatClient.
/// Throws SchemaViolation if a request differs from the recorded one.
class ReplayChatClient : public ChatClient {
public:
    explicit ReplayChatClient(const std::filesystem::path& path);
    std::string complete(const std::vector<ChatMessage>& messages) override;

private:
    std::vector<std::pair<json, std::string>> entries_;
    std::size_t next_ = 0;
    std::mutex mu_;
};

json messages_to_json(const std::vector<ChatMessage>& messages);

}  // namespace twinmarket::agents
