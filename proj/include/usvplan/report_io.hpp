#pragma once

#include <string>

#include "usvplan/executor.hpp"

namespace usvplan {

/// Serialize a mission report to JSON with sorted keys and no
/// wall-clock fields, so identical runs produce identical bytes.
std::string report_to_json(const MissionReport& report);

/// Trajectory as CSV: t,x,y,psi,u,v,r with a header row.
std::string trajectory_csv(const std::vector<VesselState>& trajectory);

/// Write via a temporary file in the same directory plus rename, so a
/// crash never leaves a half-written artifact.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace usvplan
