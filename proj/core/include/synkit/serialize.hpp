#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "synkit/lti.hpp"
#include "synkit/lyapunov.hpp"
#include "synkit/netsim.hpp"
#include "synkit/protocol.hpp"
#include "synkit/structure.hpp"
#include "synkit/verify.hpp"

namespace synkit {

using Json = nlohmann::json;

Json matrix_to_json(const MatrixXd& m);
MatrixXd matrix_from_json(const Json& j);

Json to_json(const LtiModel& m);
LtiModel model_from_json(const Json& j);

Json to_json(const PreCompensator& pc);
PreCompensator precompensator_from_json(const Json& j);

Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const ScbForm& scb);
ScbForm scb_from_json(const Json& j);

Json to_json(const Protocol& p);
Protocol protocol_from_json(const Json& j);

Json to_json(const StructuralReport& rep);
Json to_json(const PrecompensatorReport& rep);
Json to_json(const SweepReport& rep);
Json to_json(const NecessityAudit& audit);
Json to_json(const SyncMetrics& m);

LtiModel load_model(const std::string& path);
PreCompensator load_precompensator(const std::string& path);

/// Protocol files embed the model they were synthesized for.
void save_protocol(const std::string& path, const LtiModel& m, const Protocol& p);
std::pair<LtiModel, Protocol> load_protocol(const std::string& path);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace synkit
