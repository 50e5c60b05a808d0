#include "casimir/controls.hpp"

#include "casimir/errors.hpp"

namespace casimir {

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0) || max_terms < 1) {
        throw DomainError("SeriesControl requires rel_tol > 0 and max_terms >= 1");
    }
}

void QuadratureControl::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_levels < 1) {
        throw DomainError("QuadratureControl requires rel_tol > 0, abs_tol >= 0, max_levels >= 1");
    }
}

}  // namespace casimir
