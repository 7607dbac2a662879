#pragma once

#include <span>
#include <string_view>

namespace krein {

/// All numerical thresholds in one place. Every value is relative to the
/// scale named next to it.
struct Tolerances {
  double symmetry = 1e-12;            // ‖X − Xᵀ‖_max / ‖X‖_max on inputs
  double orthonormality = 1e-12;      // ‖EᵀE − I‖_max
  double positivity = 1e-12;          // slack on λ_min(EᵀB) ≥ ε
  double condition_cap = 1e8;         // cond of [E K] and [B N]
  double eig_residual = 1e-10;        // dense eigensolver residual contracts
  double extension_property = 1e-10;  // ‖SK·E − B‖ / ‖B‖
  double kernel_angle = 1e-8;         // principal angle ker(SK) vs span K
  double krein_formula = 1e-9;        // ‖QᵀFQ − pinv(QᵀSKQ)‖ / ‖F‖
  double unitary_equivalence = 1e-9;  // similarity residuals / ‖F‖
  double unitarity = 1e-10;           // ‖ÛᵀÛ − I‖, ‖ŜᵀŜ − G‖ / ‖G‖
  double resolvent_order = 1e-9;      // λ_min of resolvent differences / (1/a)
  double mu_ordering = 1e-9;          // μ_F ≤ μ_K·(1 + tol)
  double spectral_identity = 1e-9;    // pencil vs Krein eigenvalues, relative
  double t_norm = 1e-9;               // ‖T‖_W ≤ 1/ε + tol
  double correspondence = 1e-8;       // eigenvector round trips
  double eigenspace_angle = 1e-7;     // principal angles under multiplicity
};

struct ToleranceField {
  std::string_view name;
  double Tolerances::*member;
};

/// Name table used by the CLI (--tol-<name>) and the JSON reports.
std::span<const ToleranceField> tolerance_fields();

}  // namespace krein
