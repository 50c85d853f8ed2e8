#include "usvplan/planner.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iterator>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "usvplan/errors.hpp"

namespace usvplan {

using nlohmann::json;

namespace {

double tour_length(const Point2& start, const std::vector<const DockingStation*>& order) {
    double len = 0.0;
    Point2 at = start;
    for (const auto* st : order) {
        len += distance(at, st->position);
        at = st->position;
    }
    return len;
}

SymbolicPlan expand_visits(const std::vector<const DockingStation*>& order,
                           const std::string& rationale) {
    SymbolicPlan plan;
    for (const auto* st : order) {
        plan.actions.push_back({ActionKind::MoveTo, st->id});
        plan.actions.push_back({ActionKind::RecordData, st->id});
    }
    plan.reasoning = rationale;
    return plan;
}

std::string fmt_length(const char* prefix, double len) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%s; total straight-line tour length %.1f m.", prefix, len);
    return buf;
}

}  // namespace

SymbolicPlan heuristic_plan(const PlanContext& ctx) {
    if (!ctx.mission.structured) {
        throw ValidationError(
            "the heuristic backend requires a structured mission (visit_all or ordered list)");
    }
    if (ctx.remaining_stations.empty()) {
        throw ValidationError("no stations remain to plan for");
    }

    std::vector<const DockingStation*> pending;
    for (const auto& id : ctx.remaining_stations) {
        pending.push_back(&ctx.world->find_station(id));
    }

    // A station that just failed goes to the back of the order so the
    // rest of the mission is attempted first.
    const DockingStation* demoted = nullptr;
    if (ctx.feedback) {
        const auto it = std::find_if(pending.begin(), pending.end(), [&](const auto* st) {
            return st->id == ctx.feedback->failed_action.target;
        });
        if (it != pending.end()) {
            demoted = *it;
            pending.erase(it);
        }
    }

    std::vector<const DockingStation*> order;
    std::string rationale;
    if (std::holds_alternative<VisitOrdered>(*ctx.mission.structured)) {
        order = pending;
        rationale = "Requested station order preserved";
    } else {
        Point2 at = ctx.current_location;
        while (!pending.empty()) {
            auto best = pending.begin();
            double best_dist = distance(at, (*best)->position);
            for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
                const double d = distance(at, (*it)->position);
                if (d < best_dist) {
                    best = it;
                    best_dist = d;
                }
            }
            order.push_back(*best);
            at = (*best)->position;
            pending.erase(best);
        }
        rationale = "Nearest-neighbor ordering by straight-line distance from the current position";
    }
    if (demoted) {
        order.push_back(demoted);
        rationale += ", retrying " + demoted->id + " last after its reported failure";
    }
    return expand_visits(order,
                         fmt_length(rationale.c_str(), tour_length(ctx.current_location, order)));
}

std::string HeuristicBackend::generate_raw(const PromptBundle&, const PlanContext& ctx) {
    return serialize_plan(heuristic_plan(ctx));
}

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {}

std::string RemoteBackend::post_chat(const std::vector<Message>& messages) {
    // Split "scheme://host[:port]/prefix" into the client target and an
    // optional path prefix.
    const std::string& url = config_.base_url;
    const std::size_t scheme_end = url.find("://");
    const std::size_t path_start =
        url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string host = url.substr(0, path_start);
    const std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);

    json body;
    body["model"] = config_.model;
    body["temperature"] = 0;
    body["messages"] = json::array();
    for (const auto& msg : messages) {
        body["messages"].push_back({{"role", msg.role}, {"content", msg.content}});
    }
    const std::string request_body = body.dump(2);

    httplib::Client client(host);
    const auto timeout_s = static_cast<time_t>(config_.timeout_s);
    const auto timeout_us =
        static_cast<time_t>((config_.timeout_s - static_cast<double>(timeout_s)) * 1e6);
    client.set_connection_timeout(timeout_s, timeout_us);
    client.set_read_timeout(timeout_s, timeout_us);
    client.set_write_timeout(timeout_s, timeout_us);

    httplib::Headers headers;
    // The key travels only as a header; transcripts keep bodies only.
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const auto res =
        client.Post(prefix + "/chat/completions", headers, request_body, "application/json");
    if (!res) {
        throw BackendError("chat request to " + host + " failed: " +
                           httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw BackendError("chat request returned HTTP " + std::to_string(res->status));
    }
    transcripts_.push_back({request_body, res->body});

    const json reply = json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty() || !reply["choices"][0].contains("message") ||
        !reply["choices"][0]["message"].contains("content") ||
        !reply["choices"][0]["message"]["content"].is_string()) {
        throw BackendError("chat response is not a chat-completion object");
    }
    return reply["choices"][0]["message"]["content"].get<std::string>();
}

std::string RemoteBackend::generate_raw(const PromptBundle& prompt, const PlanContext&) {
    std::string user = prompt.mission_text;
    if (prompt.feedback_text) {
        user += "\n\n" + *prompt.feedback_text;
    }
    return post_chat({{"system", prompt.system_text}, {"user", user}});
}

std::optional<std::string> RemoteBackend::retry_on_rejection(const PromptBundle& prompt,
                                                             const PlanContext&,
                                                             const std::string& rejected_raw,
                                                             const std::string& error_text) {
    std::string user = prompt.mission_text;
    if (prompt.feedback_text) {
        user += "\n\n" + *prompt.feedback_text;
    }
    const std::string correction =
        "Your previous response was rejected: " + error_text +
        ". Respond again with exactly one JSON object in the required schema and nothing else.";
    return post_chat({{"system", prompt.system_text},
                      {"user", user},
                      {"assistant", rejected_raw},
                      {"user", correction}});
}

std::vector<Transcript> RemoteBackend::take_transcripts() {
    return std::exchange(transcripts_, {});
}

SymbolicPlan generate_plan(PlanBackend& backend, const PlanContext& ctx) {
    const PromptBundle prompt =
        build_prompt(default_prompt_template(), *ctx.world, *ctx.params, ctx.capabilities,
                     ctx.mission, ctx.current_location, ctx.feedback);
    const std::string raw = backend.generate_raw(prompt, ctx);
    std::string first_error;
    try {
        return parse_plan(raw, *ctx.world, ctx.capabilities);
    } catch (const BackendError&) {
        throw;
    } catch (const Error& e) {
        first_error = e.what();
    }
    const auto retry = backend.retry_on_rejection(prompt, ctx, raw, first_error);
    if (!retry) {
        throw PlanRejected("plan rejected: " + first_error, {raw});
    }
    try {
        return parse_plan(*retry, *ctx.world, ctx.capabilities);
    } catch (const Error& e) {
        throw PlanRejected("plan rejected after one corrective exchange: " + std::string(e.what()),
                           {raw, *retry});
    }
}

SymbolicPlan replan_with_feedback(PlanBackend& backend, const PlanContext& ctx, int max_replans) {
    if (!ctx.feedback) {
        throw Error("replan_with_feedback requires a feedback report");
    }
    if (ctx.feedback->attempt > max_replans) {
        throw ReplanBudgetExhausted("station " + ctx.feedback->failed_action.target + " failed " +
                                    std::to_string(ctx.feedback->attempt) +
                                    " times, over the budget of " + std::to_string(max_replans));
    }
    return generate_plan(backend, ctx);
}

}  // namespace usvplan
