#include "dop/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dop {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() +
                          "': " + ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << text;
    if (!out) throw IoError("write failed on '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                        "': " + ec.message());
}

void write_solution_csv(const std::filesystem::path& path, const Mesh& mesh,
                        const GridFunction& u, const GridFunction& psi1,
                        const GridFunction& psi2) {
  const std::size_t count = static_cast<std::size_t>(mesh.node_count());
  if (u.size() != count || psi1.size() != count || psi2.size() != count) {
    throw ShapeMismatch("solution.csv: grid functions do not match the mesh");
  }
  std::string text;
  text.reserve(count * 64);
  text += "x,y,class,u,psi1,psi2\n";
  for (long node = 0; node < mesh.node_count(); ++node) {
    const Point pt = mesh.coord(node);
    const std::size_t s = static_cast<std::size_t>(node);
    text += fmt17(pt.x);
    text += ',';
    text += fmt17(pt.y);
    text += ',';
    text += mesh.is_interior(node) ? "interior" : "collar";
    text += ',';
    text += fmt17(u[s]);
    text += ',';
    text += fmt17(psi1[s]);
    text += ',';
    text += fmt17(psi2[s]);
    text += '\n';
  }
  write_text_atomic(path, text);
}

GridFunction read_solution_csv(const std::filesystem::path& path, const Mesh& mesh) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != "x,y,class,u,psi1,psi2") {
    throw IoError("'" + path.string() + "' is not a solution.csv (bad header)");
  }
  GridFunction u;
  u.reserve(static_cast<std::size_t>(mesh.node_count()));
  long node = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double vals[2];
    for (int c = 0; c < 2; ++c) {
      if (!std::getline(ss, cell, ',')) throw IoError("short row in '" + path.string() + "'");
      vals[c] = std::stod(cell);
    }
    std::getline(ss, cell, ',');  // class
    if (!std::getline(ss, cell, ',')) throw IoError("short row in '" + path.string() + "'");
    const double uv = std::stod(cell);
    if (node >= mesh.node_count()) throw ShapeMismatch("too many rows in '" + path.string() + "'");
    const Point pt = mesh.coord(node);
    if (std::abs(vals[0] - pt.x) > 1e-12 || std::abs(vals[1] - pt.y) > 1e-12) {
      throw ShapeMismatch("row " + std::to_string(node) + " of '" + path.string() +
                          "' does not match the mesh ordering");
    }
    u.push_back(uv);
    ++node;
  }
  if (node != mesh.node_count()) {
    throw ShapeMismatch("row count in '" + path.string() + "' does not match the mesh");
  }
  return u;
}

void write_report_json(const std::filesystem::path& path, const nlohmann::json& report) {
  write_text_atomic(path, report.dump(2) + "\n");
}

void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRow>& rows) {
  std::string text = "radius_units,k,runtime_s,iterations,error1,error2\n";
  for (const BenchRow& r : rows) {
    text += std::to_string(r.radius_units);
    text += ',';
    text += std::to_string(r.k);
    text += ',';
    text += fmt17(r.runtime_s);
    text += ',';
    text += fmt17(r.iterations);
    text += ',';
    text += fmt17(r.error1);
    text += ',';
    text += fmt17(r.error2);
    text += '\n';
  }
  write_text_atomic(path, text);
}

void write_psweep_csv(const std::filesystem::path& path, const std::vector<PsweepRow>& rows) {
  std::string text = "p,no_obstacle,one_obstacle,two_obstacles\n";
  for (const PsweepRow& r : rows) {
    text += fmt17(r.p);
    text += ',';
    text += fmt17(r.no_obstacle);
    text += ',';
    text += fmt17(r.one_obstacle);
    text += ',';
    text += fmt17(r.two_obstacles);
    text += '\n';
  }
  write_text_atomic(path, text);
}

}  // namespace dop
