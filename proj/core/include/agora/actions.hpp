#pragma once

#include <array>
#include <string>

namespace agora {

// External behavior set. Shopping: browse/search/page/view_details/purchase.
// Social: chat/post/live_stream. System: enter_shopping/enter_social/idle.
enum class ActionType {
    browse,
    search,
    page,
    view_details,
    purchase,
    chat,
    post,
    live_stream,
    enter_shopping,
    enter_social,
    idle,
};

constexpr std::array<ActionType, 11> kAllActions = {
    ActionType::browse,      ActionType::search,       ActionType::page,
    ActionType::view_details, ActionType::purchase,    ActionType::chat,
    ActionType::post,        ActionType::live_stream,  ActionType::enter_shopping,
    ActionType::enter_social, ActionType::idle,
};

// Routine actions whose memory footprint is served from the shared bank.
inline bool is_basic_action(ActionType a) {
    return a == ActionType::enter_shopping || a == ActionType::enter_social ||
           a == ActionType::page || a == ActionType::idle;
}

inline bool is_shopping_action(ActionType a) {
    return a == ActionType::browse || a == ActionType::search || a == ActionType::page ||
           a == ActionType::view_details || a == ActionType::purchase;
}

inline bool is_social_action(ActionType a) {
    return a == ActionType::chat || a == ActionType::post || a == ActionType::live_stream;
}

std::string to_string(ActionType a);
ActionType action_from_string(const std::string& s);

} // namespace agora
