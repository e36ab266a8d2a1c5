#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/json.hpp"

namespace twinmarket::feed {

/// type1: market commentary, type2: trading share, type3: event commentary.
enum class PostType { type1, type2, type3 };

const char* to_string(PostType t);
PostType post_type_from_string(const std::string& s);

struct Post {
    PostId post_id;
    AgentId author_id;
    Day created_day = 0;
    std::string content;
    PostType post_type = PostType::type1;
    std::int64_t upvotes = 0;
    std::int64_t downvotes = 0;
    std::optional<PostId> parent_id;
    PostId root_id;
    /// Author's market view when posting, in [-1, 1]; read by rule agents.
    double stance = 0.0;

    [[nodiscard]] bool is_repost() const { return parent_id.has_value(); }
    friend bool operator==(const Post&, const Post&) = default;
};

enum class ActionKind { like, unlike, repost };

const char* to_string(ActionKind k);

struct SocialAction {
    AgentId actor;
    ActionKind kind = ActionKind::like;
    PostId target;
    std::string comment;  // repost only
};

/// Append-mostly post store. Ids are dense and assigned in creation order.
class PostStore {
public:
    PostId create(AgentId author, Day day, std::string content, PostType type, double stance = 0.0);

    [[nodiscard]] bool contains(PostId id) const;
    /// Throws UnknownPost.
    [[nodiscard]] const Post& get(PostId id) const;
    [[nodiscard]] const std::vector<Post>& all() const { return posts_; }
    [[nodiscard]] std::size_t size() const { return posts_.size(); }
    /// Ids authored by `author`, oldest first.
    [[nodiscard]] const std::vector<PostId>& by_author(AgentId author) const;

    void like(PostId id);
    void unlike(PostId id);
    /// New post with parent = target, root = target's root, zero votes.
    PostId repost(PostId target, AgentId author, Day day, std::string comment);

    /// Inserts a fully formed post (log replay); throws SchemaViolation on id or lineage mismatch.
    void restore(const Post& p);

private:
    Post& mut(PostId id);

    std::vector<Post> posts_;
    std::map<AgentId, std::vector<PostId>> by_author_;
};

/// Returns the new post id for a repost, std::nullopt for votes. Throws UnknownPost.
std::optional<PostId> apply_action(PostStore& store, const SocialAction& action, Day day);

/// Parent walk from the root to `id`. Throws UnknownPost, or CycleDetected on corrupted lineage.
std::vector<PostId> repost_chain(PostId id, const PostStore& store);

ordered_json to_json(const Post& p);
Post post_from_json(const json& j);

}  // namespace twinmarket::feed
