#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mixspec/eigensolver.hpp"
#include "mixspec/experiments.hpp"
#include "mixspec/grid.hpp"

namespace mixspec {

// Shortest round-trip decimal representation (std::to_chars); the same value
// always prints the same bytes.
std::string format_double(double v);

// Write-then-rename so readers never observe a partial file.  Creates parent
// directories as needed.
void atomic_write(const std::string& path, const std::string& content);

nlohmann::json eigen_result_to_json(const EigenResult& r);
nlohmann::json report_to_json(const ExperimentReport& report);

// CSV with header parameter,lambda1,lambda2,gap,residual1,min_v,max_v.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// CSV with header x,component,v1..vk; one row per grid node.
std::string vectors_to_csv(const Grid& grid, const EigenResult& r);

}  // namespace mixspec
