//
// gcat - exact computation with finite categories and group actions
//

#ifndef GCAT_ERROR_HPP_
#define GCAT_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcat {

  enum class ErrorKind {
    associativity_violation,
    identity_violation,
    dangling_reference,
    malformed_input,
    size_cap_exceeded,
    not_a_homomorphism,
    not_a_subgroup,
    action_not_free,
    not_a_functor,
    not_natural,
    not_a_subcategory_inclusion,
    witness_not_normalized,
    unit_not_invertible,
    equivariance_violation,
    subgroup_not_in_units,
    not_a_poset_nerve,
    bad_index,
    unsupported
  };

  char const* to_string(ErrorKind kind) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
          _kind(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept {
      return _kind;
    }

   private:
    ErrorKind _kind;
  };

  // Enumeration limits. Every SizeCapExceeded error reports the limit that
  // was hit together with the estimate that triggered it.
  struct Limits {
    std::size_t max_objects    = 64;
    std::size_t max_morphisms  = 512;
    std::size_t max_candidates = 1'000'000;
    std::size_t max_simplices  = 2'000'000;

    static Limits sized(std::size_t objects, std::size_t morphisms) {
      Limits l;
      l.max_objects   = objects;
      l.max_morphisms = morphisms;
      return l;
    }
  };

  [[noreturn]] void throw_size_cap(std::string const& what,
                                   std::size_t        estimate,
                                   std::size_t        cap);

  inline void check_cap(std::string const& what,
                        std::size_t        estimate,
                        std::size_t        cap) {
    if (estimate > cap) {
      throw_size_cap(what, estimate, cap);
    }
  }

}  // namespace gcat

#endif  // GCAT_ERROR_HPP_
