#include "mixspec/report_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace mixspec {

std::string format_double(double v) {
  std::array<char, 40> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc())
    throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

nlohmann::json eigen_result_to_json(const EigenResult& r) {
  nlohmann::json j;
  j["lambdas"] = r.lambdas;
  j["residuals"] = r.residuals;
  j["gap"] = r.gap;  // NaN serializes as null when k < 2
  nlohmann::json profile = nlohmann::json::array();
  for (const auto& [lo, hi] : r.sign_profile) profile.push_back({lo, hi});
  j["sign_profile"] = profile;
  return j;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["verdict"] = to_string(report.verdict);
  j["finding"] = report.finding;
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto& [label, value] : report.evidence)
    evidence.push_back({label, value});
  j["evidence"] = evidence;
  j["sweep_rows"] = report.sweep.size();
  j["parameters"] = report.parameters;
  j["tolerances"] = report.tolerances;
  j["seed"] = report.seed;
  return j;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string csv = "parameter,lambda1,lambda2,gap,residual1,min_v,max_v\n";
  for (const auto& r : rows) {
    csv += format_double(r.parameter) + ',' + format_double(r.lambda1) + ',' +
           format_double(r.lambda2) + ',' + format_double(r.gap) + ',' +
           format_double(r.residual1) + ',' + format_double(r.min_v) + ',' +
           format_double(r.max_v) + '\n';
  }
  return csv;
}

std::string vectors_to_csv(const Grid& grid, const EigenResult& r) {
  std::string csv = "x,component";
  for (Eigen::Index j = 0; j < r.vectors.cols(); ++j)
    csv += ",v" + std::to_string(j + 1);
  csv += '\n';
  for (int i = 0; i < grid.n(); ++i) {
    const GridNode& node = grid.nodes[static_cast<std::size_t>(i)];
    csv += format_double(node.x) + ',' + std::to_string(node.component);
    for (Eigen::Index j = 0; j < r.vectors.cols(); ++j)
      csv += ',' + format_double(r.vectors(i, j));
    csv += '\n';
  }
  return csv;
}

}  // namespace mixspec
