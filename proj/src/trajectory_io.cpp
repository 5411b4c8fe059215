#include "augsill/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "augsill/dictionary_io.hpp"
#include "augsill/errors.hpp"
#include "augsill/text_format.hpp"

namespace augsill {

namespace fs = std::filesystem;

std::string trajectory_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "traj_%03zu.csv", index);
  return buf;
}

std::string trajectory_to_csv(const Trajectory& traj, bool with_derivatives) {
  const Eigen::Index m = traj.states.cols();
  if (with_derivatives && m != traj.system.state_dim())
    throw ShapeError("derivative columns need states of the system's dimension");
  std::string out = "t";
  for (Eigen::Index i = 1; i <= m; ++i) out += ",x" + std::to_string(i);
  if (with_derivatives)
    for (Eigen::Index i = 1; i <= m; ++i) out += ",dx" + std::to_string(i);
  out += '\n';
  for (Eigen::Index k = 0; k < traj.length(); ++k) {
    out += format_double(static_cast<double>(k) * traj.dt);
    for (Eigen::Index i = 0; i < m; ++i) out += ',' + format_double(traj.states(k, i));
    if (with_derivatives) {
      const Eigen::Vector2d f = system_rhs(traj.system, traj.states.row(k).transpose());
      out += ',' + format_double(f[0]) + ',' + format_double(f[1]);
    }
    out += '\n';
  }
  return out;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, bool with_derivatives) {
  write_text_file(path, trajectory_to_csv(traj, with_derivatives));
}

Trajectory read_trajectory_csv(const std::string& path, const SystemSpec& system) {
  std::istringstream in(read_text_file(path));
  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
  const auto header = split(line, ',');
  std::size_t m = 0;
  while (m + 1 < header.size() && header[m + 1] == "x" + std::to_string(m + 1)) ++m;
  if (header.empty() || header[0] != "t" || m == 0)
    throw DataError("'" + path + "' lacks a t,x1,... header");

  std::vector<double> t;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) throw DataError("ragged row in '" + path + "'");
    t.push_back(parse_double(cells[0]));
    std::vector<double> x;
    for (std::size_t i = 0; i < m; ++i) x.push_back(parse_double(cells[i + 1]));
    rows.push_back(std::move(x));
  }
  if (t.size() < 2) throw DataError("'" + path + "' needs at least two samples");

  Trajectory traj;
  traj.system = system;
  traj.dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(traj.dt > 0.0)) throw DataError("time column of '" + path + "' is not increasing");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs((t[k] - t[k - 1]) - traj.dt) > 1e-9 * std::max(1.0, std::abs(t[k])))
      throw DataError("'" + path + "' is not uniformly sampled");
  traj.states.resize(static_cast<Eigen::Index>(t.size()), static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t i = 0; i < m; ++i)
      traj.states(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rows[k][i];
  if (!traj.states.allFinite()) throw DataError("'" + path + "' has non-finite states");
  return traj;
}

std::vector<Trajectory> read_trajectory_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw DataError("'" + dir + "' is not a directory");
  SystemSpec system = SystemSpec::standard(SystemId::VanDerPol);
  std::uint64_t seed = 0;
  const fs::path meta = fs::path(dir) / "metadata.ini";
  if (fs::exists(meta)) {
    const auto tree = ini_to_tree(read_text_file(meta.string()));
    const auto path = boost::property_tree::ptree::path_type("simulation/system", '/');
    if (auto id = tree.get_optional<std::string>(path)) system.id = system_id_from_string(*id);
    system = SystemSpec::standard(system.id);
    if (auto c = tree.get_optional<std::string>(
            boost::property_tree::ptree::path_type("simulation/constants", '/')))
      system.constants = parse_list(*c);
    if (auto s = tree.get_optional<std::string>(
            boost::property_tree::ptree::path_type("simulation/seed", '/')))
      seed = std::stoull(*s);
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("traj_", 0) == 0 && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no traj_*.csv files in '" + dir + "'");
  std::vector<Trajectory> out;
  for (const auto& f : files) {
    out.push_back(read_trajectory_csv(f.string(), system));
    out.back().seed = seed;
  }
  return out;
}

}  // namespace augsill
