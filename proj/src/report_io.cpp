#include "usvplan/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "usvplan/errors.hpp"

namespace usvplan {

using nlohmann::json;

namespace {

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

json action_json(const Action& action) {
    return {{"action", to_string(action.kind)}, {"target", action.target}};
}

}  // namespace

std::string report_to_json(const MissionReport& report) {
    json doc;
    doc["backend"] = report.backend_name;
    doc["final_status"] = report.final_status;

    doc["plans"] = json::array();
    for (const auto& plan : report.plans) {
        json steps = json::array();
        for (const auto& action : plan.actions) steps.push_back(action_json(action));
        doc["plans"].push_back({{"plan", steps}, {"reasoning", plan.reasoning}});
    }

    doc["outcomes"] = json::array();
    for (const auto& outcome : report.outcomes) {
        json o;
        o["action"] = action_json(outcome.action);
        o["status"] = outcome.status == OutcomeStatus::Succeeded ? "Succeeded" : "Failed";
        if (outcome.reason) o["reason"] = to_string(*outcome.reason);
        o["start_time"] = outcome.start_time;
        o["end_time"] = outcome.end_time;
        o["end_location"] = point_json(outcome.end_location);
        o["plan_episode"] = outcome.plan_episode;
        json path = json::array();
        for (const auto& p : outcome.path_waypoints) path.push_back(point_json(p));
        o["path"] = path;
        doc["outcomes"].push_back(o);
    }

    doc["records"] = json::array();
    for (const auto& record : report.records) {
        doc["records"].push_back({{"station_id", record.station_id},
                                  {"timestamp", record.timestamp},
                                  {"position", point_json(record.position)},
                                  {"heading", record.heading},
                                  {"alignment_error", record.alignment_error}});
    }

    doc["feedbacks"] = json::array();
    for (const auto& feedback : report.feedbacks) {
        doc["feedbacks"].push_back({{"failed_action", action_json(feedback.failed_action)},
                                    {"reason", to_string(feedback.reason)},
                                    {"location", point_json(feedback.location)},
                                    {"attempt", feedback.attempt}});
    }

    doc["planned_waypoints"] = json::array();
    for (const auto& wp : report.planned_waypoints) {
        doc["planned_waypoints"].push_back({{"station_id", wp.station_id},
                                            {"position", point_json(wp.position)},
                                            {"plan_episode", wp.plan_episode}});
    }

    doc["unreachable_stations"] = report.unreachable_stations;

    doc["trajectory"] = json::array();
    for (const auto& s : report.trajectory) {
        doc["trajectory"].push_back(json::array(
            {s.time, s.position.x, s.position.y, s.heading, s.surge, s.sway, s.yaw_rate}));
    }

    return doc.dump(2) + "\n";
}

std::string trajectory_csv(const std::vector<VesselState>& trajectory) {
    std::string out = "t,x,y,psi,u,v,r\n";
    char row[256];
    for (const auto& s : trajectory) {
        std::snprintf(row, sizeof(row), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", s.time,
                      s.position.x, s.position.y, s.heading, s.surge, s.sway, s.yaw_rate);
        out += row;
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace usvplan
