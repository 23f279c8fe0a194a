#pragma once

#include <string>
#include <vector>

#include "synkit/protocol.hpp"

namespace synkit {

struct SweepPoint {
  Complex lambda;
  double margin = 0.0;  // negative = pass at this point
};

/// Finite-grid surrogate for the all-lambda stability claims; certification
/// comes from the Lyapunov certificates, the sweep is a cross-check.
struct SweepReport {
  std::vector<SweepPoint> grid;
  double worst_margin = 0.0;
  Complex worst_lambda;
  bool pass = false;
};

/// Log-spaced grid over re in [re_min, re_max], im in [-im_max, im_max]
/// (plus the real axis row).
struct CtGridSpec {
  int n_re = 10;
  int n_im = 20;  // symmetric log-spaced imaginary magnitudes
  double re_min = 1e-3, re_max = 1e3, im_max = 1e3;
};

/// Concentric rings inside the unit disk. The lambda = 0 point is checked
/// against radius <= 1 + 1e-10 (the regulated block), all other rings
/// against the strict bound.
struct DtGridSpec {
  std::vector<double> rings = {0.0, 0.25, 0.5, 0.75, 0.999};
  int angles = 32;
};

SweepReport ct_sweep(const LtiModel& m, const CtFullProtocol& p, CtGridSpec grid = {});
SweepReport ct_sweep(const LtiModel& m, const CtPartialProtocol& p, CtGridSpec grid = {});
SweepReport dt_sweep(const LtiModel& m, const DtFullProtocol& p, DtGridSpec grid = {});
SweepReport dt_sweep(const LtiModel& m, const DtPartialProtocol& p, DtGridSpec grid = {});
SweepReport sweep(const LtiModel& m, const Protocol& p);

struct AuditItem {
  std::string condition;
  bool holds = false;
  std::string witness;  // why it fails, when it fails
};

struct NecessityAudit {
  std::vector<AuditItem> items;
  bool pass = false;
};

/// Evaluates the necessary conditions for scale-free non-collaborative
/// synchronization of a SISO agent, with a witness per violated condition.
/// Throws NotSiso.
NecessityAudit siso_necessity_audit(const LtiModel& m);

}  // namespace synkit
