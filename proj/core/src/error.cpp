//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/error.hpp"

namespace gcat {

  char const* to_string(ErrorKind kind) noexcept {
    switch (kind) {
      case ErrorKind::associativity_violation:
        return "AssociativityViolation";
      case ErrorKind::identity_violation:
        return "IdentityViolation";
      case ErrorKind::dangling_reference:
        return "DanglingReference";
      case ErrorKind::malformed_input:
        return "MalformedInput";
      case ErrorKind::size_cap_exceeded:
        return "SizeCapExceeded";
      case ErrorKind::not_a_homomorphism:
        return "NotAHomomorphism";
      case ErrorKind::not_a_subgroup:
        return "NotASubgroup";
      case ErrorKind::action_not_free:
        return "ActionNotFree";
      case ErrorKind::not_a_functor:
        return "NotAFunctor";
      case ErrorKind::not_natural:
        return "NotNatural";
      case ErrorKind::not_a_subcategory_inclusion:
        return "NotASubcategoryInclusion";
      case ErrorKind::witness_not_normalized:
        return "WitnessNotNormalized";
      case ErrorKind::unit_not_invertible:
        return "UnitNotInvertible";
      case ErrorKind::equivariance_violation:
        return "EquivarianceViolation";
      case ErrorKind::subgroup_not_in_units:
        return "SubgroupNotInUnits";
      case ErrorKind::not_a_poset_nerve:
        return "NotAPosetNerve";
      case ErrorKind::bad_index:
        return "BadIndex";
      case ErrorKind::unsupported:
        return "Unsupported";
    }
    return "Unknown";
  }

  void throw_size_cap(std::string const& what,
                      std::size_t        estimate,
                      std::size_t        cap) {
    throw Error(ErrorKind::size_cap_exceeded,
                what + ": estimate " + std::to_string(estimate)
                    + " exceeds cap " + std::to_string(cap));
  }

}  // namespace gcat
