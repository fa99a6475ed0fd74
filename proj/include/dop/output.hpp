#pragma once

// Machine-readable run artifacts: solution.csv (one row per node, 17
// significant digits), report.json, bench.csv / psweep.csv. All files are
// written atomically (temp + rename).

#include <filesystem>
#include <string>
#include <vector>

#include "dop/dpp.hpp"
#include "dop/mesh.hpp"

#include "json.hpp"

namespace dop {

inline constexpr const char* kVersion = "0.1.0";

void write_text_atomic(const std::filesystem::path& path, const std::string& text);

// Header: x,y,class,u,psi1,psi2 — row-major node order.
void write_solution_csv(const std::filesystem::path& path, const Mesh& mesh,
                        const GridFunction& u, const GridFunction& psi1,
                        const GridFunction& psi2);

// Reads the u column back; validates row count and coordinates.
GridFunction read_solution_csv(const std::filesystem::path& path, const Mesh& mesh);

void write_report_json(const std::filesystem::path& path, const nlohmann::json& report);

struct BenchRow {
  int radius_units;
  long k;
  double runtime_s;
  double iterations;
  double error1;  // vs exp(x) sin(y), p = 2
  double error2;  // vs x^2 - y^2 - y, p = 2
};

// Header: radius_units,k,runtime_s,iterations,error1,error2.
void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows);

struct PsweepRow {
  double p;
  double no_obstacle;
  double one_obstacle;
  double two_obstacles;
};

// Header: p,no_obstacle,one_obstacle,two_obstacles (mean iteration counts).
void write_psweep_csv(const std::filesystem::path& path, const std::vector<PsweepRow>& rows);

}  // namespace dop
