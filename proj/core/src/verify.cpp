#include "synkit/verify.hpp"

#include <cmath>
#include <sstream>

#include "synkit/errors.hpp"

namespace synkit {

namespace {

constexpr double kStrictMargin = 1e-10;

std::vector<Complex> ct_grid_points(const CtGridSpec& grid) {
  std::vector<double> res, ims;
  for (int i = 0; i < grid.n_re; ++i) {
    const double t = grid.n_re == 1 ? 0.0 : static_cast<double>(i) / (grid.n_re - 1);
    res.push_back(grid.re_min * std::pow(grid.re_max / grid.re_min, t));
  }
  const int half = grid.n_im / 2;
  for (int i = 0; i < half; ++i) {
    const double t = half == 1 ? 0.0 : static_cast<double>(i) / (half - 1);
    const double mag = 1e-3 * std::pow(grid.im_max / 1e-3, t);
    ims.push_back(mag);
    ims.push_back(-mag);
  }
  std::vector<Complex> pts;
  for (double re : res) {
    pts.emplace_back(re, 0.0);  // real-axis row
    for (double im : ims) pts.emplace_back(re, im);
  }
  return pts;
}

double max_real_part(const MatrixXcd& block) {
  const VectorXcd ev = eigenvalues(block);
  double worst = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) worst = std::max(worst, ev(i).real());
  return worst;
}

double spectral_radius(const MatrixXcd& block) {
  const VectorXcd ev = eigenvalues(block);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) worst = std::max(worst, std::abs(ev(i)));
  return worst;
}

SweepReport finalize(std::vector<SweepPoint> grid) {
  SweepReport report;
  report.grid = std::move(grid);
  report.worst_margin = -std::numeric_limits<double>::infinity();
  for (const auto& pt : report.grid) {
    if (pt.margin > report.worst_margin) {
      report.worst_margin = pt.margin;
      report.worst_lambda = pt.lambda;
    }
  }
  report.pass = report.worst_margin < 0.0;
  return report;
}

template <typename BlockFn>
SweepReport run_ct_sweep(const CtGridSpec& grid, BlockFn&& block) {
  std::vector<SweepPoint> pts;
  for (const Complex& lam : ct_grid_points(grid))
    pts.push_back({lam, max_real_part(block(lam)) + kStrictMargin});
  return finalize(std::move(pts));
}

template <typename BlockFn>
SweepReport run_dt_sweep(const DtGridSpec& grid, BlockFn&& block) {
  std::vector<SweepPoint> pts;
  for (double ring : grid.rings) {
    if (ring == 0.0) {
      const Complex lam(0.0, 0.0);
      pts.push_back({lam, spectral_radius(block(lam)) - (1.0 + kStrictMargin)});
      continue;
    }
    for (int k = 0; k < grid.angles; ++k) {
      const double angle = 2.0 * M_PI * k / grid.angles;
      const Complex lam = ring * Complex(std::cos(angle), std::sin(angle));
      pts.push_back({lam, spectral_radius(block(lam)) - (1.0 - kStrictMargin)});
    }
  }
  return finalize(std::move(pts));
}

}  // namespace

SweepReport ct_sweep(const LtiModel& m, const CtFullProtocol& p, CtGridSpec grid) {
  return run_ct_sweep(grid, [&](Complex lam) { return ct_full_block(m, p, lam); });
}

SweepReport ct_sweep(const LtiModel& m, const CtPartialProtocol& p, CtGridSpec grid) {
  return run_ct_sweep(grid, [&](Complex lam) { return ct_partial_block(m, p, lam); });
}

SweepReport dt_sweep(const LtiModel& m, const DtFullProtocol& p, DtGridSpec grid) {
  return run_dt_sweep(grid, [&](Complex lam) { return dt_full_block(m, p, lam); });
}

SweepReport dt_sweep(const LtiModel& m, const DtPartialProtocol& p, DtGridSpec grid) {
  return run_dt_sweep(grid, [&](Complex lam) { return dt_partial_block(m, p, lam); });
}

SweepReport sweep(const LtiModel& m, const Protocol& p) {
  return std::visit(
      [&](const auto& proto) -> SweepReport {
        using T = std::decay_t<decltype(proto)>;
        if constexpr (std::is_same_v<T, CtFullProtocol> ||
                      std::is_same_v<T, CtPartialProtocol>)
          return ct_sweep(m, proto);
        else
          return dt_sweep(m, proto);
      },
      p);
}

namespace {

std::string fmt_complex(Complex z) {
  std::ostringstream out;
  out << z.real();
  if (z.imag() != 0.0) out << (z.imag() > 0 ? "+" : "-") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace

NecessityAudit siso_necessity_audit(const LtiModel& m) {
  if (!m.siso()) fail(ErrorCode::not_siso, "audit applies to single-input single-output agents");
  const StructuralReport rep = structural_report(m);
  const bool ct = m.time_domain == TimeDomain::continuous;
  NecessityAudit audit;

  {
    AuditItem item{"stabilizable and detectable", rep.stabilizable && rep.detectable, ""};
    if (!item.holds)
      item.witness = std::string(!rep.stabilizable ? "unstabilizable" : "undetectable") +
                     " unstable mode (PBH rank drop)";
    audit.items.push_back(item);
  }
  {
    AuditItem item{"neutrally stable", rep.neutrally_stable, ""};
    if (!item.holds) {
      const VectorXcd ev = eigenvalues(m.A);
      double worst = -std::numeric_limits<double>::infinity();
      Complex at;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double margin = ct ? ev(i).real() : std::abs(ev(i)) - 1.0;
        if (margin > worst) {
          worst = margin;
          at = ev(i);
        }
      }
      if (worst > 1e-8)
        item.witness = "eigenvalue " + fmt_complex(at) +
                       (ct ? " in the open right half-plane" : " outside the closed unit disk");
      else
        item.witness = "boundary eigenvalue " + fmt_complex(at) +
                       " is not semi-simple (Jordan block)";
    }
    audit.items.push_back(item);
  }
  if (ct) {
    AuditItem zeros_item{"weakly minimum phase", rep.weakly_minimum_phase, ""};
    if (!zeros_item.holds) {
      for (const auto& z : rep.invariant_zeros)
        if (z.real() > 1e-8)
          zeros_item.witness = "invariant zero at " + fmt_complex(z);
      if (zeros_item.witness.empty())
        zeros_item.witness = "repeated invariant zero on the imaginary axis";
    }
    audit.items.push_back(zeros_item);

    AuditItem rd_item{"relative degree 1", rep.relative_degree_one.value_or(false), ""};
    if (!rd_item.holds) {
      if (rep.infinite_zero_orders.empty())
        rd_item.witness = "transfer function is identically zero";
      else
        rd_item.witness =
            "CB = 0; relative degree " + std::to_string(rep.infinite_zero_orders[0]);
    }
    audit.items.push_back(rd_item);
  }

  audit.pass = true;
  for (const auto& item : audit.items) audit.pass = audit.pass && item.holds;
  return audit;
}

}  // namespace synkit
