#include "twinmarket/feed/post.hpp"

#include <algorithm>
#include <set>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::feed {

const char* to_string(PostType t) {
    switch (t) {
        case PostType::type1: return "type1";
        case PostType::type2: return "type2";
        case PostType::type3: return "type3";
    }
    return "type1";
}

PostType post_type_from_string(const std::string& s) {
    if (s == "type1") return PostType::type1;
    if (s == "type2") return PostType::type2;
    if (s == "type3") return PostType::type3;
    throw SchemaViolation("unknown post type " + s);
}

const char* to_string(ActionKind k) {
    switch (k) {
        case ActionKind::like: return "like";
        case ActionKind::unlike: return "unlike";
        case ActionKind::repost: return "repost";
    }
    return "like";
}

PostId PostStore::create(AgentId author, Day day, std::string content, PostType type, double stance) {
    Post p;
    p.post_id = PostId(posts_.size());
    p.author_id = author;
    p.created_day = day;
    p.content = std::move(content);
    p.post_type = type;
    p.root_id = p.post_id;
    p.stance = std::clamp(stance, -1.0, 1.0);
    posts_.push_back(p);
    by_author_[author].push_back(p.post_id);
    return p.post_id;
}

bool PostStore::contains(PostId id) const { return id.value < posts_.size(); }

const Post& PostStore::get(PostId id) const {
    if (!contains(id)) throw UnknownPost("unknown post " + std::to_string(id.value));
    return posts_[id.value];
}

Post& PostStore::mut(PostId id) {
    if (!contains(id)) throw UnknownPost("unknown post " + std::to_string(id.value));
    return posts_[id.value];
}

const std::vector<PostId>& PostStore::by_author(AgentId author) const {
    static const std::vector<PostId> none;
    auto it = by_author_.find(author);
    return it == by_author_.end() ? none : it->second;
}

void PostStore::like(PostId id) { ++mut(id).upvotes; }

void PostStore::unlike(PostId id) { ++mut(id).downvotes; }

PostId PostStore::repost(PostId target, AgentId author, Day day, std::string comment) {
    const Post src = get(target);
    const PostId id = create(author, day, std::move(comment), src.post_type, src.stance);
    Post& p = posts_[id.value];
    p.parent_id = target;
    p.root_id = src.root_id;
    return id;
}

void PostStore::restore(const Post& p) {
    if (p.post_id.value != posts_.size()) throw SchemaViolation("post ids must be dense and ordered");
    if (p.parent_id) {
        if (!contains(*p.parent_id)) throw SchemaViolation("repost of an unknown post");
        if (get(*p.parent_id).root_id != p.root_id) throw SchemaViolation("inconsistent repost root");
    } else if (p.root_id != p.post_id) {
        throw SchemaViolation("original post must be its own root");
    }
    posts_.push_back(p);
    by_author_[p.author_id].push_back(p.post_id);
}

std::optional<PostId> apply_action(PostStore& store, const SocialAction& action, Day day) {
    switch (action.kind) {
        case ActionKind::like: store.like(action.target); return std::nullopt;
        case ActionKind::unlike: store.unlike(action.target); return std::nullopt;
        case ActionKind::repost: return store.repost(action.target, action.actor, day, action.comment);
    }
    return std::nullopt;
}

std::vector<PostId> repost_chain(PostId id, const PostStore& store) {
    std::vector<PostId> chain;
    std::set<PostId> seen;
    std::optional<PostId> cur = id;
    while (cur) {
        if (!seen.insert(*cur).second) throw CycleDetected("repost lineage revisits a post");
        const Post& p = store.get(*cur);
        chain.push_back(*cur);
        cur = p.parent_id;
    }
    std::reverse(chain.begin(), chain.end());
    if (store.get(chain.front()).post_id != store.get(id).root_id) {
        throw CycleDetected("repost chain does not end at its recorded root");
    }
    return chain;
}

ordered_json to_json(const Post& p) {
    ordered_json j;
    j["day"] = p.created_day;
    j["post_id"] = p.post_id.value;
    j["author"] = p.author_id.value;
    j["type"] = to_string(p.post_type);
    j["parent"] = p.parent_id ? ordered_json(p.parent_id->value) : ordered_json(nullptr);
    j["root"] = p.root_id.value;
    j["upvotes"] = p.upvotes;
    j["downvotes"] = p.downvotes;
    j["stance"] = p.stance;
    j["content"] = p.content;
    return j;
}

Post post_from_json(const json& j) {
    Post p;
    p.created_day = j.at("day").get<Day>();
    p.post_id = PostId(j.at("post_id").get<std::uint64_t>());
    p.author_id = AgentId(j.at("author").get<std::uint32_t>());
    p.post_type = post_type_from_string(j.at("type").get<std::string>());
    if (!j.at("parent").is_null()) p.parent_id = PostId(j.at("parent").get<std::uint64_t>());
    p.root_id = PostId(j.at("root").get<std::uint64_t>());
    p.upvotes = j.value("upvotes", std::int64_t{0});
    p.downvotes = j.value("downvotes", std::int64_t{0});
    p.stance = j.value("stance", 0.0);
    p.content = j.value("content", std::string{});
    return p;
}

}  // namespace twinmarket::feed
