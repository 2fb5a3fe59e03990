#pragma once

// Command-line front end. Each command builds one table; tables render as
// RFC-4180 CSV or as a JSON object with a metadata block.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/sets.hpp"

namespace conelab::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Gallery, Abb, Modulus, Check, Certify };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Gallery;
  std::string family;              // gallery table name
  std::string instance = "kflat";  // set name for the other commands
  long N = 0;                      // 0 picks a default per command
  long n_max = 100;
  std::string n_list = "4,8,16,32,64";
  std::optional<double> epsilon;
  double tol = 1e-9;
  long max_iter = 100000;
  std::string schedule = "geom:0.45:0.5:20";
  std::string point = "0";
  std::string functional;
  std::string target = "0";
  double level = 1.0;
  long samples = 10000;
  bool sweep = false;  // abb over n_list
  std::string output;
  Format format = Format::Csv;
  std::uint64_t seed = 0;
  bool timing = false;
};

/// Bad option values or combinations; the message names the precondition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Cell = std::variant<std::string, long, double, bool, std::vector<double>>;

struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<bool> pass;

  void add(std::vector<Cell> row, bool ok);
  bool all_pass() const;
};

/// Parses argv-style arguments (without the program name). Applies the
/// CONELAB_SEED override. Throws ConfigError.
RunConfig parse_args(const std::vector<std::string>& args);

struct Instance {
  SetSpec set;
  ConeSpec cone;
};

/// Named set with its natural cone at dimension N.
Instance make_instance(const std::string& name, long N);

/// Comma-separated decimals zero-padded to N; "0" is the zero vector.
Eigen::VectorXd parse_coords(const std::string& text, long N);

/// "geom:delta0:ratio:count" or "list:d1,d2,...".
std::vector<double> parse_schedule(const std::string& text);

Table run(const RunConfig& cfg);

std::string to_csv(const Table& table);
std::string to_json(const Table& table, const RunConfig& cfg,
                    std::optional<double> wall_seconds = std::nullopt);

/// Full program: parse, run, write. Exit status 0 iff every row passes,
/// 1 if some row fails, 2 for rejected configs, 3 for I/O failures.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conelab::cli
