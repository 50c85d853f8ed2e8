#pragma once

#include <optional>
#include <string>

#include "usvplan/plan.hpp"
#include "usvplan/vessel.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// Texts handed to the backend: a system message describing the vessel,
/// world, and output contract, and a user message carrying the mission,
/// current state, and any failure feedback.
struct PromptBundle {
    std::string system_text;
    std::string mission_text;
    std::optional<std::string> feedback_text;
};

/// Built-in system prompt template. Slots use {lower_snake_case} names:
/// {vessel_description}, {capability_list}, {station_list},
/// {usv_current_location}, {mission_goal}.
std::string default_prompt_template();

/// Fill the template from the world and mission. Throws TemplateError on
/// an unknown slot name or a slot left unfilled.
PromptBundle build_prompt(const std::string& system_template, const WorldState& world,
                          const VesselParams& params, const CapabilitySet& capabilities,
                          const MissionSpec& mission, const Point2& current_location,
                          const std::optional<FeedbackReport>& feedback);

}  // namespace usvplan
