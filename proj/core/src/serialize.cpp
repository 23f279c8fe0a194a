#include "synkit/serialize.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "synkit/errors.hpp"

namespace synkit {

Json matrix_to_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "matrix must be a nested array");
  const auto rows = j.size();
  if (rows == 0) return MatrixXd(0, 0);
  if (!j[0].is_array()) fail(ErrorCode::parse_error, "matrix rows must be arrays");
  const auto cols = j[0].size();
  MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      fail(ErrorCode::parse_error, "matrix rows have inconsistent lengths");
    for (size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        fail(ErrorCode::parse_error, "matrix entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

namespace {

const Json& field(const Json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    fail(ErrorCode::parse_error, std::string("missing field `") + name + "`");
  return *it;
}

TimeDomain time_domain_from(const Json& j) {
  const std::string s = j.get<std::string>();
  if (s == "continuous") return TimeDomain::continuous;
  if (s == "discrete") return TimeDomain::discrete;
  fail(ErrorCode::parse_error, "time_domain must be `continuous` or `discrete`");
}

std::vector<int> ints_from(const Json& j) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(v.get<int>());
  return out;
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

Json to_json(const LtiModel& m) {
  return Json{{"A", matrix_to_json(m.A)},
              {"B", matrix_to_json(m.B)},
              {"C", matrix_to_json(m.C)},
              {"time_domain", to_string(m.time_domain)}};
}

LtiModel model_from_json(const Json& j) {
  return {matrix_from_json(field(j, "A")), matrix_from_json(field(j, "B")),
          matrix_from_json(field(j, "C")), time_domain_from(field(j, "time_domain"))};
}

Json to_json(const PreCompensator& pc) {
  return Json{{"Ap", matrix_to_json(pc.Ap)},
              {"Bp", matrix_to_json(pc.Bp)},
              {"Cp", matrix_to_json(pc.Cp)},
              {"Dp", matrix_to_json(pc.Dp)}};
}

PreCompensator precompensator_from_json(const Json& j) {
  return {matrix_from_json(field(j, "Ap")), matrix_from_json(field(j, "Bp")),
          matrix_from_json(field(j, "Cp")), matrix_from_json(field(j, "Dp"))};
}

Json to_json(const Certificate& cert) {
  return Json{{"kind", to_string(cert.kind)},
              {"P", matrix_to_json(cert.P)},
              {"slack", cert.slack}};
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "ct_semidefinite")
    cert.kind = CertificateKind::ct_semidefinite;
  else if (kind == "dt_semidefinite")
    cert.kind = CertificateKind::dt_semidefinite;
  else if (kind == "dt_observer_q")
    cert.kind = CertificateKind::dt_observer_q;
  else
    fail(ErrorCode::parse_error, "unknown certificate kind: " + kind);
  cert.P = matrix_from_json(field(j, "P"));
  cert.slack = field(j, "slack").get<double>();
  return cert;
}

Json to_json(const ScbForm& scb) {
  return Json{{"S", matrix_to_json(scb.S)},
              {"S_inv", matrix_to_json(scb.S_inv)},
              {"A11", matrix_to_json(scb.A11)},
              {"A12", matrix_to_json(scb.A12)},
              {"A21", matrix_to_json(scb.A21)},
              {"A22", matrix_to_json(scb.A22)},
              {"Bbar", matrix_to_json(scb.Bbar)},
              {"Cbar", matrix_to_json(scb.Cbar)},
              {"nbar", scb.nbar},
              {"output_permutation", scb.output_permutation}};
}

ScbForm scb_from_json(const Json& j) {
  ScbForm scb;
  scb.S = matrix_from_json(field(j, "S"));
  scb.S_inv = matrix_from_json(field(j, "S_inv"));
  scb.A11 = matrix_from_json(field(j, "A11"));
  scb.A12 = matrix_from_json(field(j, "A12"));
  scb.A21 = matrix_from_json(field(j, "A21"));
  scb.A22 = matrix_from_json(field(j, "A22"));
  scb.Bbar = matrix_from_json(field(j, "Bbar"));
  scb.Cbar = matrix_from_json(field(j, "Cbar"));
  scb.nbar = field(j, "nbar").get<int>();
  scb.output_permutation = ints_from(field(j, "output_permutation"));
  return scb;
}

Json to_json(const Protocol& p) {
  Json j;
  j["kind"] = to_string(kind_of(p));
  std::visit(
      [&](const auto& proto) {
        using T = std::decay_t<decltype(proto)>;
        if constexpr (std::is_same_v<T, CtFullProtocol>) {
          j["P"] = to_json(proto.P);
          j["rho"] = proto.rho;
        } else if constexpr (std::is_same_v<T, CtPartialProtocol>) {
          j["pre_compensator"] = to_json(proto.pre);
          j["scb"] = to_json(proto.scb);
          j["P"] = to_json(proto.P);
          j["H"] = matrix_to_json(proto.H);
          j["rho"] = proto.rho;
        } else if constexpr (std::is_same_v<T, DtFullProtocol>) {
          j["P"] = to_json(proto.P);
          j["epsilon"] = proto.epsilon;
          j["epsilon_star"] = proto.epsilon_star;
          j["gain_overridden"] = proto.gain_overridden;
        } else {
          j["H"] = matrix_to_json(proto.H);
          j["P"] = to_json(proto.P);
          j["Q"] = to_json(proto.Q);
          j["delta"] = proto.delta;
          j["delta_star"] = proto.delta_star;
          j["gain_overridden"] = proto.gain_overridden;
          const DtGainConstants& k = proto.constants;
          j["constants"] = Json{{"M1", k.M1},         {"M2", k.M2},
                                {"M3", k.M3},         {"theta1", k.theta1},
                                {"theta2", k.theta2}, {"theta3", k.theta3},
                                {"kappa", k.kappa},   {"delta1", k.delta1},
                                {"delta2", k.delta2}, {"m1_floored", k.m1_floored}};
        }
      },
      p);
  return j;
}

Protocol protocol_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "ct_full") {
    CtFullProtocol p;
    p.P = certificate_from_json(field(j, "P"));
    p.rho = field(j, "rho").get<double>();
    return p;
  }
  if (kind == "ct_partial") {
    CtPartialProtocol p;
    p.pre = precompensator_from_json(field(j, "pre_compensator"));
    p.scb = scb_from_json(field(j, "scb"));
    p.P = certificate_from_json(field(j, "P"));
    p.H = matrix_from_json(field(j, "H"));
    p.rho = field(j, "rho").get<double>();
    return p;
  }
  if (kind == "dt_full") {
    DtFullProtocol p;
    p.P = certificate_from_json(field(j, "P"));
    p.epsilon = field(j, "epsilon").get<double>();
    p.epsilon_star = field(j, "epsilon_star").get<double>();
    p.gain_overridden = j.value("gain_overridden", false);
    return p;
  }
  if (kind == "dt_partial") {
    DtPartialProtocol p;
    p.H = matrix_from_json(field(j, "H"));
    p.P = certificate_from_json(field(j, "P"));
    p.Q = certificate_from_json(field(j, "Q"));
    p.delta = field(j, "delta").get<double>();
    p.delta_star = field(j, "delta_star").get<double>();
    p.gain_overridden = j.value("gain_overridden", false);
    const Json& k = field(j, "constants");
    p.constants.M1 = field(k, "M1").get<double>();
    p.constants.M2 = field(k, "M2").get<double>();
    p.constants.M3 = field(k, "M3").get<double>();
    p.constants.theta1 = field(k, "theta1").get<double>();
    p.constants.theta2 = field(k, "theta2").get<double>();
    p.constants.theta3 = field(k, "theta3").get<double>();
    p.constants.kappa = field(k, "kappa").get<double>();
    p.constants.delta1 = field(k, "delta1").get<double>();
    p.constants.delta2 = field(k, "delta2").get<double>();
    p.constants.m1_floored = k.value("m1_floored", false);
    return p;
  }
  fail(ErrorCode::parse_error, "unknown protocol kind: " + kind);
}

Json to_json(const StructuralReport& rep) {
  Json zeros = Json::array();
  for (const auto& z : rep.invariant_zeros) zeros.push_back(complex_to_json(z));
  Json j{{"stabilizable", rep.stabilizable},
         {"detectable", rep.detectable},
         {"neutrally_stable", rep.neutrally_stable},
         {"minimum_phase", rep.minimum_phase},
         {"weakly_minimum_phase", rep.weakly_minimum_phase},
         {"uniform_rank_one", rep.uniform_rank_one},
         {"left_invertible", rep.left_invertible},
         {"invariant_zeros", zeros},
         {"infinite_zero_orders", rep.infinite_zero_orders},
         {"normal_rank", rep.normal_rank}};
  if (rep.relative_degree_one) j["relative_degree_one"] = *rep.relative_degree_one;
  return j;
}

Json to_json(const PrecompensatorReport& rep) {
  Json added = Json::array();
  for (const auto& z : rep.added_zeros) added.push_back(complex_to_json(z));
  return Json{{"stabilizable", rep.stabilizable},
              {"detectable", rep.detectable},
              {"left_invertible", rep.left_invertible},
              {"poles_are_union", rep.poles_are_union},
              {"infinite_zero_order_preserved", rep.infinite_zero_order_preserved},
              {"added_zeros_stable", rep.added_zeros_stable},
              {"added_zeros", added},
              {"pass", rep.pass()}};
}

Json to_json(const SweepReport& rep) {
  Json grid = Json::array();
  for (const auto& pt : rep.grid)
    grid.push_back(Json{{"lambda", complex_to_json(pt.lambda)}, {"margin", pt.margin}});
  return Json{{"pass", rep.pass},
              {"worst_margin", rep.worst_margin},
              {"worst_lambda", complex_to_json(rep.worst_lambda)},
              {"grid", grid}};
}

Json to_json(const NecessityAudit& audit) {
  Json items = Json::array();
  for (const auto& item : audit.items)
    items.push_back(Json{{"condition", item.condition},
                         {"holds", item.holds},
                         {"witness", item.witness}});
  return Json{{"pass", audit.pass}, {"items", items}};
}

Json to_json(const SyncMetrics& m) {
  Json j{{"initial_sync_error", m.initial_error},
         {"final_sync_error", m.final_error},
         {"threshold_ratio", m.threshold_ratio}};
  if (m.time_to_threshold)
    j["time_to_threshold"] = *m.time_to_threshold;
  else
    j["time_to_threshold"] = nullptr;
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::parse_error, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorCode::parse_error, std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::parse_error, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

LtiModel load_model(const std::string& path) { return model_from_json(load_json(path)); }

PreCompensator load_precompensator(const std::string& path) {
  return precompensator_from_json(load_json(path));
}

void save_protocol(const std::string& path, const LtiModel& m, const Protocol& p) {
  Json j = to_json(p);
  j["model"] = to_json(m);
  save_json(path, j);
}

std::pair<LtiModel, Protocol> load_protocol(const std::string& path) {
  const Json j = load_json(path);
  return {model_from_json(field(j, "model")), protocol_from_json(j)};
}

}  // namespace synkit
