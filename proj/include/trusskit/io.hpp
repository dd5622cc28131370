#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "json.hpp"
#include "trusskit/btp.hpp"
#include "trusskit/continuum.hpp"
#include "trusskit/damage.hpp"
#include "trusskit/rigidity.hpp"
#include "trusskit/statics.hpp"
#include "trusskit/truss.hpp"

namespace trusskit {

using Json = nlohmann::ordered_json;

inline constexpr int kFileVersion = 1;

struct ParsedTruss {
  Truss truss;
  std::vector<std::string> warnings;  // e.g. prescribed lengths that disagree with positions
};

// Schema violations throw InputError naming the line or field.
ParsedTruss parse_truss(const std::string& text);
ParsedTruss truss_from_json(const Json& j);
Json truss_to_json(const Truss& truss);
// Canonical bytes: fixed key order, shortest round-trip floats, trailing newline.
std::string serialize_truss(const Truss& truss);

ParsedTruss load_truss(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

BtpNode btp_from_json(const Json& j);
Json btp_to_json(const BtpNode& node);

Json to_json(const AnalysisReport& r);
Json to_json(const DamageReport& r);
Json to_json(const EquilibriumSolution& s);
Json to_json(const ACResult& r);
Json to_json(const HexLimitProbe& p);
Json to_json(const BoundaryProbe& p);

Json vector_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j, const std::string& what);

// Header edge_<id>,... then one row per basis vector, 17 significant digits.
std::string compat_csv(const Eigen::MatrixXd& B, const std::vector<int>& edge_ids);

// Parses "1,2,5" into integers or doubles. Throws InputError.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace trusskit
