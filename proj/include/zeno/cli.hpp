#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/units.hpp"

namespace zeno::cli {

inline constexpr const char* kVersion = "1.0.0";

enum Exit : int { ok = 0, usage = 2, infeasible = 3, io = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParamValue {
  double value = 0.0;
  std::string unit;
};

struct RunConfig {
  std::string command;
  std::map<std::string, ParamValue> parameters;   // numeric quantities
  std::map<std::string, std::string> options;     // categorical choices
  std::string format = "csv";
  std::string output;                             // empty: stdout
  std::uint64_t seed = 0;
};

std::vector<std::string> commands();

// Parses "VALUE[UNIT]" (e.g. "500nm", "3e12 s^-1", "10"); an empty unit means the parameter default.
ParamValue parse_quantity(const std::string& text);

// Reads a JSON config: {"command": ..., "parameters": {key: {"value": v, "unit": u}}, "options": {...},
// "format": ..., "output": ..., "seed": ...}. Throws UsageError naming the offending key, IoError if unreadable.
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Checks keys and units against the command's parameter table and fills defaults.
RunConfig effective_config(const RunConfig& cfg);
std::string config_json(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace zeno::cli
