#include "krein/tolerances.hpp"

#include <array>

namespace krein {

std::span<const ToleranceField> tolerance_fields() {
  static constexpr std::array<ToleranceField, 16> fields{{
      {"symmetry", &Tolerances::symmetry},
      {"orthonormality", &Tolerances::orthonormality},
      {"positivity", &Tolerances::positivity},
      {"condition-cap", &Tolerances::condition_cap},
      {"eig-residual", &Tolerances::eig_residual},
      {"extension-property", &Tolerances::extension_property},
      {"kernel-angle", &Tolerances::kernel_angle},
      {"krein-formula", &Tolerances::krein_formula},
      {"unitary-equivalence", &Tolerances::unitary_equivalence},
      {"unitarity", &Tolerances::unitarity},
      {"resolvent-order", &Tolerances::resolvent_order},
      {"mu-ordering", &Tolerances::mu_ordering},
      {"spectral-identity", &Tolerances::spectral_identity},
      {"t-norm", &Tolerances::t_norm},
      {"correspondence", &Tolerances::correspondence},
      {"eigenspace-angle", &Tolerances::eigenspace_angle},
  }};
  return fields;
}

}  // namespace krein
