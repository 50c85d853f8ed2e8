#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "usvplan/plan.hpp"
#include "usvplan/prompt.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// Everything a backend needs to produce or revise a plan.
struct PlanContext {
    const WorldState* world = nullptr;
    const VesselParams* params = nullptr;
    CapabilitySet capabilities;
    MissionSpec mission;
    Point2 current_location;
    /// Stations still to be serviced, in scenario order for VisitAll and
    /// in mission order for VisitOrdered.
    std::vector<std::string> remaining_stations;
    std::optional<FeedbackReport> feedback;
};

/// One request/response exchange with a remote backend.
struct Transcript {
    std::string request_body;
    std::string response_body;
};

/// Produces raw plan text from a prompt. Implementations decide whether
/// a rejected first answer earns a corrective second request.
class PlanBackend {
  public:
    virtual ~PlanBackend() = default;
    virtual std::string name() const = 0;
    virtual std::string generate_raw(const PromptBundle& prompt, const PlanContext& ctx) = 0;
    /// Called after a parse or validation failure. Returns a corrected
    /// raw response, or nullopt to give up immediately.
    virtual std::optional<std::string> retry_on_rejection(const PromptBundle& prompt,
                                                          const PlanContext& ctx,
                                                          const std::string& rejected_raw,
                                                          const std::string& error_text) = 0;
    virtual std::vector<Transcript> take_transcripts() { return {}; }
};

/// Deterministic plan: VisitOrdered is taken verbatim; VisitAll greedily
/// visits the nearest remaining station by straight-line distance between
/// station positions. Feedback demotes the failed station to the end.
SymbolicPlan heuristic_plan(const PlanContext& ctx);

/// Backend wrapper around heuristic_plan so both routes share the same
/// parse-and-validate pipeline.
class HeuristicBackend : public PlanBackend {
  public:
    std::string name() const override { return "heuristic"; }
    std::string generate_raw(const PromptBundle& prompt, const PlanContext& ctx) override;
    std::optional<std::string> retry_on_rejection(const PromptBundle&, const PlanContext&,
                                                  const std::string&,
                                                  const std::string&) override {
        return std::nullopt;
    }
};

struct RemoteConfig {
    std::string base_url = "http://127.0.0.1:8080";
    std::string model = "gpt-4";
    double timeout_s = 30.0;
    std::string api_key_env = "USVPLAN_API_KEY";
};

/// Chat-completion client. Temperature pinned to zero; the API key is
/// read from the configured environment variable, sent only as a header,
/// and never written to transcripts or logs.
class RemoteBackend : public PlanBackend {
  public:
    explicit RemoteBackend(RemoteConfig config);
    std::string name() const override { return "remote"; }
    std::string generate_raw(const PromptBundle& prompt, const PlanContext& ctx) override;
    std::optional<std::string> retry_on_rejection(const PromptBundle& prompt,
                                                  const PlanContext& ctx,
                                                  const std::string& rejected_raw,
                                                  const std::string& error_text) override;
    std::vector<Transcript> take_transcripts() override;

  private:
    struct Message {
        std::string role;
        std::string content;
    };
    std::string post_chat(const std::vector<Message>& messages);

    RemoteConfig config_;
    std::vector<Transcript> transcripts_;
};

/// Full generation pipeline: build prompt, obtain raw text, parse,
/// validate. On a rejection the backend gets one corrective exchange; if
/// that also fails, throws PlanRejected carrying every raw response.
/// Transport failures surface as BackendError.
SymbolicPlan generate_plan(PlanBackend& backend, const PlanContext& ctx);

/// Revision pipeline after an action failure; ctx.feedback must be set
/// and its attempt count within budget, else ReplanBudgetExhausted.
SymbolicPlan replan_with_feedback(PlanBackend& backend, const PlanContext& ctx, int max_replans);

}  // namespace usvplan
