#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "usvplan/errors.hpp"
#include "usvplan/executor.hpp"
#include "usvplan/report_io.hpp"
#include "usvplan/scenario.hpp"
#include "usvplan/svg_plot.hpp"

namespace {

namespace fs = std::filesystem;
using namespace usvplan;

/// Parse the --mission flag: "visit_all", "ordered:id1,id2,...", or free
/// text (remote backend only).
MissionSpec mission_from_flag(const std::string& flag, const WorldState& world) {
    MissionSpec mission;
    mission.raw_text = flag;
    if (flag == "visit_all") {
        mission.raw_text = "Visit all docking stations and record data.";
        mission.structured = VisitAll{};
        return mission;
    }
    if (flag.rfind("ordered:", 0) == 0) {
        VisitOrdered ordered;
        std::string rest = flag.substr(8);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const std::size_t comma = rest.find(',', pos);
            const std::string id = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                               : comma - pos);
            if (id.empty()) {
                throw ValidationError("--mission ordered: empty station id in list");
            }
            world.find_station(id);
            ordered.station_ids.push_back(id);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        mission.raw_text = "Visit the listed docking stations in the given order and record data.";
        mission.structured = ordered;
        return mission;
    }
    return mission;  // free text, unstructured
}

int run_command(const std::string& scenario_path, const std::string& mission_flag,
                const std::string& backend_name, long seed, const std::string& out_dir,
                bool plot, double dt_override, double max_sim_time_override) {
    (void)seed;  // accepted for interface stability; the pipeline is deterministic
    Scenario scenario = load_scenario(scenario_path);
    if (dt_override > 0.0) scenario.executor.dt = dt_override;
    if (max_sim_time_override > 0.0) scenario.executor.max_sim_time = max_sim_time_override;
    if (scenario.executor.dt <= 0.0 || scenario.executor.dt > 0.5) {
        throw ValidationError("--dt: must be in (0, 0.5] seconds");
    }
    if (scenario.executor.max_sim_time <= 0.0) {
        throw ValidationError("--max-sim-time: must be positive");
    }

    if (!mission_flag.empty()) {
        scenario.mission = mission_from_flag(mission_flag, scenario.world);
    }

    std::unique_ptr<PlanBackend> backend;
    if (backend_name == "heuristic") {
        if (!scenario.mission.structured) {
            throw ValidationError(
                "the heuristic backend needs a structured mission: pass --mission visit_all or "
                "--mission ordered:<id,...>, or add mission.structured to the scenario");
        }
        backend = std::make_unique<HeuristicBackend>();
    } else if (backend_name == "remote") {
        const char* key = std::getenv(scenario.remote.api_key_env.c_str());
        if (!key || !*key) {
            throw ValidationError("remote backend: environment variable " +
                                  scenario.remote.api_key_env + " is not set");
        }
        backend = std::make_unique<RemoteBackend>(scenario.remote);
    } else {
        throw ValidationError("--backend: expected 'heuristic' or 'remote'");
    }

    const MissionReport report =
        run_mission(*backend, scenario.world, scenario.mission, scenario.initial_state,
                    scenario.vessel_params, scenario.control, scenario.executor);

    fs::create_directories(out_dir);
    // Clear stale per-episode artifacts from earlier runs into this dir.
    for (const auto& entry : fs::directory_iterator(out_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("plan_", 0) == 0 || name.rfind("transcript_", 0) == 0) {
            fs::remove(entry.path());
        }
    }

    atomic_write((fs::path(out_dir) / "mission_report.json").string(), report_to_json(report));
    atomic_write((fs::path(out_dir) / "trajectory.csv").string(),
                 trajectory_csv(report.trajectory));
    for (std::size_t i = 0; i < report.plans.size(); ++i) {
        atomic_write((fs::path(out_dir) / ("plan_" + std::to_string(i) + ".json")).string(),
                     serialize_plan(report.plans[i]) + "\n");
    }
    const auto transcripts = backend->take_transcripts();
    for (std::size_t i = 0; i < transcripts.size(); ++i) {
        atomic_write(
            (fs::path(out_dir) / ("transcript_" + std::to_string(i) + ".json")).string(),
            "{\"request\": " + transcripts[i].request_body +
                ",\n\"response\": " + transcripts[i].response_body + "}\n");
    }
    if (plot) {
        atomic_write((fs::path(out_dir) / "plot.svg").string(),
                     render_plot(report, scenario.world));
    }

    std::printf("%s: %zu records, %zu plan episode(s), %.1f s simulated\n",
                report.final_status.c_str(), report.records.size(), report.plans.size(),
                report.trajectory.empty() ? 0.0 : report.trajectory.back().time);
    return report.final_status == "Mission Completed" ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"usvplan: mission planning and guidance simulator for an unmanned surface "
                 "vessel"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "load a scenario, run the mission, write reports");
    std::string scenario_path;
    std::string mission_flag;
    std::string backend_name = "heuristic";
    long seed = 0;
    std::string out_dir = "run";
    bool plot = false;
    double dt_override = 0.0;
    double max_sim_time_override = 0.0;
    run->add_option("--scenario", scenario_path, "scenario file (.scn)")->required();
    run->add_option("--mission", mission_flag,
                    "mission override: visit_all | ordered:<id,...> | free text");
    run->add_option("--backend", backend_name, "plan backend: heuristic | remote");
    run->add_option("--seed", seed, "random seed recorded for the run (pipeline is deterministic)");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--plot", plot, "also write plot.svg");
    run->add_option("--dt", dt_override, "simulation step override, seconds");
    run->add_option("--max-sim-time", max_sim_time_override, "simulated time limit override");

    CLI11_PARSE(app, argc, argv);

    try {
        return run_command(scenario_path, mission_flag, backend_name, seed, out_dir, plot,
                           dt_override, max_sim_time_override);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
