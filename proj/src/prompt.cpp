#include "usvplan/prompt.hpp"

#include <cctype>
#include <cstdio>
#include <map>

#include "usvplan/errors.hpp"

namespace usvplan {

std::string default_prompt_template() {
    return
        "You are the mission planner for an unmanned surface vessel (USV).\n"
        "\n"
        "Vessel:\n"
        "{vessel_description}\n"
        "\n"
        "Available actions:\n"
        "{capability_list}\n"
        "\n"
        "Environment:\n"
        "{station_list}\n"
        "\n"
        "The USV is currently at {usv_current_location}.\n"
        "\n"
        "Mission goal: {mission_goal}\n"
        "\n"
        "Respond with exactly one JSON object of the form\n"
        "{\"plan\": [{\"action\": \"<action name>\", \"target\": \"<station id>\"}, ...], "
        "\"reasoning\": \"<why this order>\"}\n"
        "and nothing else. Every record_data step must immediately follow a\n"
        "move_to_docking_station step with the same target.";
}

namespace {

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), format, a, b, c);
    return buf;
}

std::string describe_vessel(const VesselParams& params) {
    std::string out;
    out += fmt("- displacement %.0f kg, twin stern azimuth pods\n", params.mass);
    out += fmt("- pod limit %.0f rpm, top speed %.1f m/s, max yaw rate %.2f rad/s",
               params.rpm_max, params.max_surge, params.max_yaw_rate);
    return out;
}

std::string describe_capabilities(const CapabilitySet& capabilities) {
    std::string out;
    for (const auto& cap : capabilities.capabilities) {
        if (!out.empty()) out += "\n";
        out += "- " + cap.name + ": " + cap.description;
    }
    return out;
}

std::string describe_stations(const WorldState& world) {
    std::string out = fmt("Operating area: (%.1f, %.1f) to ", world.bounds.min.x,
                          world.bounds.min.y) +
                      fmt("(%.1f, %.1f) meters.\n", world.bounds.max.x, world.bounds.max.y);
    out += "Docking stations:\n";
    for (const auto& st : world.stations) {
        out += "- " + st.id + fmt(": center (%.1f, %.1f), ", st.position.x, st.position.y) +
               fmt("size %.1f x %.1f x %.1f m (l x w x h), ", st.length, st.width, st.height) +
               fmt("approach heading %.3f rad\n", st.approach_heading);
    }
    out += fmt("Known obstacles: %.0f.", static_cast<double>(world.obstacles.size()));
    return out;
}

}  // namespace

PromptBundle build_prompt(const std::string& system_template, const WorldState& world,
                          const VesselParams& params, const CapabilitySet& capabilities,
                          const MissionSpec& mission, const Point2& current_location,
                          const std::optional<FeedbackReport>& feedback) {
    const std::map<std::string, std::string> slots = {
        {"vessel_description", describe_vessel(params)},
        {"capability_list", describe_capabilities(capabilities)},
        {"station_list", describe_stations(world)},
        {"usv_current_location",
         fmt("(%.2f, %.2f)", current_location.x, current_location.y)},
        {"mission_goal", mission.raw_text},
    };

    if (system_template.find("{usv_current_location}") == std::string::npos) {
        throw TemplateError("template is missing the {usv_current_location} slot");
    }
    if (system_template.find("{mission_goal}") == std::string::npos) {
        throw TemplateError("template is missing the {mission_goal} slot");
    }

    // Single left-to-right pass: a slot is '{' + lower_snake_case + '}'.
    // Braces not matching that shape (such as the JSON example in the
    // default template) pass through untouched.
    std::string rendered;
    rendered.reserve(system_template.size());
    std::size_t pos = 0;
    while (pos < system_template.size()) {
        const std::size_t open = system_template.find('{', pos);
        if (open == std::string::npos) {
            rendered.append(system_template, pos, std::string::npos);
            break;
        }
        rendered.append(system_template, pos, open - pos);
        std::size_t end = open + 1;
        while (end < system_template.size() &&
               (std::islower(static_cast<unsigned char>(system_template[end])) ||
                system_template[end] == '_')) {
            ++end;
        }
        if (end > open + 1 && end < system_template.size() && system_template[end] == '}') {
            const std::string name = system_template.substr(open + 1, end - open - 1);
            const auto it = slots.find(name);
            if (it == slots.end()) {
                throw TemplateError("unknown template slot: {" + name + "}");
            }
            rendered += it->second;
            pos = end + 1;
        } else {
            rendered += '{';
            pos = open + 1;
        }
    }

    PromptBundle bundle;
    bundle.system_text = rendered;
    bundle.mission_text = mission.raw_text;
    if (feedback) {
        bundle.feedback_text =
            feedback->to_text() +
            " Produce a new plan for the remaining stations that avoids the failure cause; "
            "schedule the failed station last if it is still worth attempting.";
    }
    return bundle;
}

}  // namespace usvplan
